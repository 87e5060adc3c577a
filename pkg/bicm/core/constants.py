import math

LOG2E = math.log2(math.e)
LN2 = math.log(2.0)
SHANNON_LIMIT_DB = 10.0 * math.log10(LN2)

LABELING_KINDS = ("brgc", "nbc", "bsgc", "fbc")
MIN_ORDER = {"brgc": 1, "nbc": 1, "bsgc": 3, "fbc": 2}

# Projection matrices (rows v_k) of the two named 8-point FOO constellations, labeled by NBC
V_OTTO = ((-1.0, -1.0), (1.0, 0.0), (-1.0, 1.0))
V_OTOTO = (
    (-1.0, 0.0),
    (math.cos(math.pi / 3), math.sin(math.pi / 3)),
    (math.cos(math.pi / 3), -math.sin(math.pi / 3)),
)

# Published zero-rate SNR gaps 10*log10(log2(e)/alpha) in dB, two decimals
REFERENCE_GAPS_DB: dict[tuple[str, str], float] = {
    ("pam:4", "brgc"): 0.96,
    ("pam:4", "fbc"): 0.96,
    ("pam:4", "nbc"): 0.0,
    ("hpam:1,2,6", "nbc"): 0.0,
    ("pam:8", "brgc"): 1.18,
    ("pam:8", "fbc"): 1.18,
    ("pam:8", "nbc"): 0.0,
    ("pam:8", "bsgc"): math.inf,
    ("pam:16", "brgc"): 1.23,
    ("pam:16", "fbc"): 1.23,
    ("pam:16", "nbc"): 0.0,
    ("pam:16", "bsgc"): math.inf,
    ("psk:8", "brgc"): 0.69,
    ("psk:8", "nbc"): 3.69,
    ("psk:8", "fbc"): 0.32,
    ("psk:8", "bsgc"): 3.01,
    ("otto", "nbc"): 0.0,
    ("ototo", "nbc"): 0.0,
}

# Published M -> infinity limits of the zero-rate Eb/N0 in dB
REFERENCE_LIMITS_DB: dict[tuple[str, str], float] = {
    ("pam", "brgc"): -0.34,
    ("pam", "nbc"): -1.59,
    ("pam", "bsgc"): math.inf,
    ("pam", "fbc"): -0.34,
    ("psk", "brgc"): -0.68,
    ("psk", "nbc"): 2.33,
    ("psk", "bsgc"): 2.33,
    ("psk", "fbc"): -1.14,
}

# Rates (bit/symbol) where the best 8-PAM labeling changes: NBC -> FBC -> BRGC
REFERENCE_CROSSOVERS_8PAM = {("nbc", "fbc"): 0.43, ("fbc", "brgc"): 1.09}

REFERENCE_TOLERANCE_DB = 0.02
