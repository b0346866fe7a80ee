"""
Field descriptions for ordlift report models
Centralized so models and report headers share one wording
"""

# Witness Field Descriptions
WITNESS_FIELDS = {
    "point": "Exact rational coordinate of the witness when it is rational.",
    "enclosure": "Certified interval containing the witness coordinate.",
    "descriptor": "Human readable description, e.g. the fixed line of a Moebius map.",
}

# Comparison Field Descriptions
COMPARISON_FIELDS = {
    "verdict": "One of equal, strictly-below, strictly-above, incomparable.",
    "witness": "Point where the comparison fails, present only for incomparable pairs.",
}

# Dominance Field Descriptions
DOMINANCE_FIELDS = {
    "dominant": "True when g(x) > x for every real x.",
    "witness": "Point with g(x) <= x when the element is not dominant.",
}

# Probe Field Descriptions
PROBE_FIELDS = {
    "outcome": "certified-dominant-on-probes, refuted or budget-exhausted.",
    "probe_index": "Index of the refuted or exhausted probe.",
    "powers": "Smallest power found for each certified probe, in probe order.",
}

# Growth Field Descriptions
GROWTH_FIELDS = {
    "n": "Power of h in the comparison g^p >= h^n.",
    "e_n": "Least p with g^p >= h^n.",
    "interval": "Certified interval for the relative growth e(g, h), when sandwich data is known.",
    "provenance": "Bracketing and bisection steps that located e_n.",
}

GROWTH_LIMIT_FIELDS = {
    "estimate": "The ratio e_N / N.",
    "interval": "Certified interval for e(g, h) from the sandwich constants.",
    "records": "Growth records for n = N.",
}

# Audit Field Descriptions
VIOLATION_FIELDS = {
    "check": "Name of the failed property.",
    "sample": "Rendered sample that violates the property.",
    "detail": "What went wrong, with the exact values involved.",
}

AUDIT_FIELDS = {
    "name": "Audit name used as the CSV section label.",
    "columns": "Column names of the result rows.",
    "rows": "Result rows rendered as strings.",
    "violations": "Every property violation found.",
}

# Surface Field Descriptions
LAMBDA_FIELDS = {
    "proportional": "Whether all sampled ratios agree.",
    "lambda_interval": "Common ratio tau(rho(w)) / f_Sigma(w).",
    "toledo": "Toledo value lambda * |chi|.",
    "witness_pair": "Two words whose ratios disagree.",
}

# Run Field Descriptions
RUN_CONFIG_FIELDS = {
    "command": "Subcommand name.",
    "inputs": "Input file paths.",
    "seed": "Seed for every random generator of the run.",
    "samples": "Number of random samples.",
    "tol": "Width target for certified intervals.",
    "power_cap": "Largest exponent tried by growth searches.",
    "cover": "Causal-cover instance name.",
    "out": "Output path, '-' for standard output.",
    "format": "csv or svg.",
    "q": "Shift of the order <=_q.",
    "n": "Growth horizon or homogenization length.",
    "words": "Number of sampled words.",
    "word_length": "Length of random reduced words.",
}

REPORT_FIELDS = {
    "header": "Config echo and versions, written as '# key=value' lines.",
    "sections": "Audit sections in run order.",
}
