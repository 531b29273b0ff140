"""Named parameter presets.

Each preset pins (ᾱ, ν̄) to a case with a known closed form or a known
special function:

- tricomi: n=1, all ones; the series is C₀(z) = Σ z^k/(k!)²
- laguerre-exp-2 / laguerre-exp-3: all ones; e_n(z) = Σ z^k/(k!)^{n+1}
- n-mittag-leffler-2: all orders and weights 1/2, n=2
- classical-wright: n=1, α=(1, 1/2), ν=(1); 𝒲(βz) equals W_{1/2,1}(z)
- proposition-half: n=1, α=β=ν=1/2
- corollary-two-stage: n=2 with zero drift
"""

from dataclasses import dataclass

from fracwright.params import OperatorParams


@dataclass(frozen=True)
class Preset:
    """A named parameter set.

    Attributes:
        name: Preset identifier (e.g., "tricomi")
        description: What the series reduces to
        params: The operator parameters
    """

    name: str
    description: str
    params: OperatorParams


TRICOMI = Preset(
    name="tricomi",
    description="Tricomi function C0(z) = sum z^k/(k!)^2",
    params=OperatorParams(alpha=(1.0, 1.0), nu=(1.0,)),
)

LAGUERRE_EXP_2 = Preset(
    name="laguerre-exp-2",
    description="Laguerre-exponential e_2(z) = sum z^k/(k!)^3",
    params=OperatorParams(alpha=(1.0, 1.0, 1.0), nu=(1.0, 1.0)),
)

LAGUERRE_EXP_3 = Preset(
    name="laguerre-exp-3",
    description="Laguerre-exponential e_3(z) = sum z^k/(k!)^4",
    params=OperatorParams(alpha=(1.0, 1.0, 1.0, 1.0), nu=(1.0, 1.0, 1.0)),
)

N_MITTAG_LEFFLER_2 = Preset(
    name="n-mittag-leffler-2",
    description="2-Mittag-Leffler E_{2;1/2,1}(z) = sum z^k/Gamma(k/2+1)^3",
    params=OperatorParams(alpha=(0.5, 0.5, 0.5), nu=(0.5, 0.5)),
)

CLASSICAL_WRIGHT = Preset(
    name="classical-wright",
    description="W(beta*z) equals the classical Wright function W_{1/2,1}(z)",
    params=OperatorParams(alpha=(1.0, 0.5), nu=(1.0,)),
)

PROPOSITION_HALF = Preset(
    name="proposition-half",
    description="Two Caputo half-derivatives around x^(1/2); zero drift",
    params=OperatorParams(alpha=(0.5, 0.5), nu=(0.5,)),
)

COROLLARY_TWO_STAGE = Preset(
    name="corollary-two-stage",
    description="n=2 with drift (0.4-0.3)+(0.5-0.6) = 0; a true eigenfunction",
    params=OperatorParams(alpha=(0.3, 0.6, 0.5), nu=(0.4, 0.5)),
)

PRESETS = {
    "tricomi": TRICOMI,
    "laguerre-exp-2": LAGUERRE_EXP_2,
    "laguerre-exp-3": LAGUERRE_EXP_3,
    "n-mittag-leffler-2": N_MITTAG_LEFFLER_2,
    "classical-wright": CLASSICAL_WRIGHT,
    "proposition-half": PROPOSITION_HALF,
    "corollary-two-stage": COROLLARY_TWO_STAGE,
}


def load_preset(name: str) -> Preset:
    """Load a preset by name.

    Args:
        name: Preset name (see preset_names())

    Returns:
        The requested Preset

    Raises:
        ValueError: If the preset name is not recognized
    """
    if name not in PRESETS:
        valid = ", ".join(PRESETS.keys())
        raise ValueError(f"Unknown preset '{name}'. Valid: {valid}")
    return PRESETS[name]


def preset_names() -> list[str]:
    """Get names of all built-in presets."""
    return list(PRESETS.keys())


__all__ = [
    "PRESETS",
    "Preset",
    "load_preset",
    "preset_names",
]
