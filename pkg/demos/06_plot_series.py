"""
Series for plotting
===================

Writes tab-separated series to the current directory: the vertex ratio, the
volume, and the normalized volume next to an empirical fit. Any plotting
tool can read them.
"""
from pathlib import Path

from natpoly.cli import main

for kind in ("vertex-ratio", "volume", "correlation"):
    out = Path(f"{kind}.tsv")
    main(["plotdata", kind, "--to", "100", "--out", str(out)])
    print(out, len(out.read_text().splitlines()) - 1, "rows")
    print(out.read_text().splitlines()[-1])
