"""Waterfall-figure rendering for sweep results."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def render_waterfall(records, out_path, title=None):
    """Render BER and FER vs Eb/N0 on a log scale to an image file."""
    ebn0 = [r.eb_n0_db for r in records]
    ber = [r.ber for r in records]
    fer = [r.fer for r in records]

    fig, ax = plt.subplots(figsize=(6, 4.5))
    if any(b > 0 for b in ber):
        ax.semilogy(ebn0, ber, marker="o", label="BER")
    if any(f > 0 for f in fer):
        ax.semilogy(ebn0, fer, marker="s", linestyle="--", label="FER")
    ax.set_xlabel(r"$E_b/N_0$ (dB)")
    ax.set_ylabel("error rate")
    ax.grid(True, which="both", alpha=0.4)
    ax.legend()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
