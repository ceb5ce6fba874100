"""A small reproducible experiment through the harness, as the CLI runs it."""

# %% Configure a two-instance run and write CSVs to a temporary directory.
import tempfile
from pathlib import Path

from latshadow.labcli import RunConfig, verify
from latshadow.polygen import GenSpec

cfg = RunConfig(
    corpus=[GenSpec.parse("family=polygon,n=2,k=2,variant=p5"), GenSpec.parse("family=lattice_hull,n=3,k=2,points=7,seed=1")],
    objectives=5,
    sigma_samples=2,
    diameter="exact",
)
out = Path(tempfile.mkdtemp())
code, _ = verify(cfg, out)

# %% What came out.
print("exit code", code)
print((out / "summary.txt").read_text())
print(sorted(f.name for f in out.iterdir()))
