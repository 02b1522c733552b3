"""Transmission at E = 2 as the barrier strength grows.

Resonances in V0 pack closer as the barrier gets stronger.  With the
narrower barrier (a = 0.5) there are about twice as many and they are
narrower.  The presets run to V0 = 20; this demo stops at 8 to stay quick.  If matplotlib is installed the two curves are saved to
strength_sweep.png.
"""

from hulthen_dirac import find_resonances, preset, run_sweep

tables = {}
for name in ("fig5", "fig6"):
    table = run_sweep(preset(name, points=160, hi=8.0))
    tables[name] = table
    peaks = find_resonances(table)
    print(f"{name}: a={table.spec.params.a:g}, {len(peaks)} resonances with V0 <= 8")
    for peak in peaks[:4]:
        print(f"    V0 = {peak.location:.5f}  fwhm = {peak.fwhm:.5f}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(7, 3.5))
    for name, table in tables.items():
        ax.plot(table.values, table.T, lw=0.8, label=f"a = {table.spec.params.a:g}")
    ax.set_xlabel("V0")
    ax.set_ylabel("T")
    ax.legend()
    fig.tight_layout()
    fig.savefig("strength_sweep.png", dpi=120)
    print("wrote strength_sweep.png")
