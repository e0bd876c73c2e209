# Driving the same computations through the command line and a config file.
import os
import subprocess
import sys
import tempfile

cfg = """\
geometry: orthogonal
gap_a: 0.1
gap_b: 0.2
gap_c: 0.3
dz: 1.0
axis: L_over_sigma
start: 0.5
stop: 5.0
steps: 5
outputs: [P_A, abs_X_AB, C_l1, additivity_residual]
"""

with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "run.yaml")
    with open(path, "w") as fh:
        fh.write(cfg)

    def run(*args):
        cmd = [sys.executable, "-m", "udw_coherence", *args]
        print("$ udw-coherence", " ".join(args))
        out = subprocess.run(cmd, capture_output=True, text=True)
        print(out.stdout + out.stderr)
        return out.returncode

    run("point", "--geometry", "parallel", "--outputs", "C_l1,P_A")
    run("sweep", "--config", path, "--no-timestamp")
    run("state", "--config", path, "--lambda", "0.1")
    code = run("validate", "--gaps", "0,1", "--distances", "1", "--geometries", "orthogonal")
    print("validate exit status", code)
