"""Generate the bundled nearest-neighbor free-energy parameter file."""

# Orbit representatives for the stack table, keyed by (pair1, pair2) where
# pair1 = (X, Y) is the outer pair and pair2 = (Z, W) the inner pair of the
# duplex 5'-X Z-3' / 3'-Y W-5'. Rotational symmetry:
#   stack((a,b),(c,d)) == stack((d,c),(b,a))
# Watson-Crick values are the published Turner 2004 dG37 stacking parameters;
# wobble-containing values are approximate (same source family), and the
# wobble-on-wobble entries are clamped to -0.10 so every stack is stabilizing.
REPS = {
    ('AU', 'AU'): -0.93,
    ('AU', 'UA'): -1.10,
    ('UA', 'AU'): -1.33,
    ('CG', 'UA'): -2.08,
    ('CG', 'AU'): -2.11,
    ('GC', 'UA'): -2.24,
    ('GC', 'AU'): -2.35,
    ('CG', 'GC'): -2.36,
    ('GC', 'CG'): -3.42,
    ('GC', 'GC'): -3.26,
    # wobble
    ('AU', 'GU'): -0.55,
    ('AU', 'UG'): -1.36,
    ('CG', 'GU'): -1.41,
    ('CG', 'UG'): -2.11,
    ('GC', 'GU'): -1.53,
    ('GC', 'UG'): -2.51,
    ('UA', 'GU'): -1.00,
    ('UA', 'UG'): -1.27,
    ('GU', 'GU'): -0.10,
    ('GU', 'UG'): -0.10,
    ('UG', 'GU'): -0.10,
}

PAIRS = ['AU', 'UA', 'CG', 'GC', 'GU', 'UG']

def rot(p):
    return p[1] + p[0]

full = {}
for (p1, p2), v in REPS.items():
    full[(p1, p2)] = v
    full[(rot(p2), rot(p1))] = v

missing = [(p1, p2) for p1 in PAIRS for p2 in PAIRS if (p1, p2) not in full]
assert not missing, missing
assert len(full) == 36
for p1 in PAIRS:
    for p2 in PAIRS:
        assert abs(full[(p1, p2)] - full[(rot(p2), rot(p1))]) < 1e-12
        assert full[(p1, p2)] < 0.0

HAIRPIN = [5.40, 5.60, 5.70, 5.40, 6.00, 5.50, 6.40, 6.50, 6.60, 6.70, 6.78,
           6.86, 6.94, 7.01, 7.07, 7.13, 7.19, 7.25, 7.30, 7.35, 7.40, 7.44,
           7.49, 7.53, 7.57, 7.61, 7.65, 7.69]  # sizes 3..30
BULGE = [3.80, 2.80, 3.20, 3.60, 4.00, 4.40, 4.59, 4.70, 4.80, 4.90, 5.00,
         5.10, 5.19, 5.27, 5.34, 5.41, 5.48, 5.54, 5.60, 5.65, 5.71, 5.76,
         5.80, 5.85, 5.89, 5.94, 5.98, 6.02, 6.05, 6.09]  # sizes 1..30
INTERNAL = [1.00, 1.10, 1.10, 2.00, 1.90, 2.10, 2.30, 2.40, 2.50, 2.60, 2.70,
            2.78, 2.86, 2.94, 3.01, 3.07, 3.13, 3.19, 3.25, 3.30, 3.35, 3.40,
            3.45, 3.49, 3.53, 3.57, 3.61, 3.65, 3.69]  # sizes 2..30

lines = [
    "# RNA nearest-neighbor free-energy parameters at 37 C (kcal/mol).",
    "# Watson-Crick stack values are the published Turner 2004 dG37 parameters;",
    "# wobble-containing stacks are approximate values from the same family,",
    "# with the two destabilizing wobble-on-wobble entries replaced by -0.10 so",
    "# that every tabulated stack is stabilizing. Loop initiations follow the",
    "# Turner 2004 tables; sizes beyond 30 extrapolate as",
    "#   E(s) = E(30) + 1.75 * RT * ln(s/30), RT = 0.616 kcal/mol.",
    "#",
    "# stack XY ZW v : duplex 5'-X Z-3' / 3'-Y W-5', outer pair (X,Y) stacked",
    "#                 over inner pair (Z,W). The table is closed under the",
    "#                 rotational symmetry stack(XY,ZW) = stack(WZ,YX).",
]
for p1 in PAIRS:
    for p2 in PAIRS:
        lines.append(f"stack {p1} {p2} {full[(p1,p2)]:.2f}")
for i, v in enumerate(HAIRPIN):
    lines.append(f"hairpin {i+3} {v:.2f}")
for i, v in enumerate(BULGE):
    lines.append(f"bulge {i+1} {v:.2f}")
for i, v in enumerate(INTERNAL):
    lines.append(f"internal {i+2} {v:.2f}")
lines.append("terminal_au 0.45")
lines.append("multiloop 0.00")

with open('/root/crate/crates/codonfold/data/rna_turner_like.params', 'w') as fh:
    fh.write("\n".join(lines) + "\n")

# sanity: TLPKAD fixture MFE by hand
stacks = [full[('UA','CG')], full[('CG','UA')], full[('UA','GC')], full[('GC','CG')], full[('CG','CG')]]
mfe = sum(stacks) + HAIRPIN[0] + 0.45
print("stacks:", stacks)
print(f"MFE(ACUCUGCCGAAGGCAGAC, ..((((((...)))))).) = {mfe:.3f}  (target -8.100 +/- 1.0: {'OK' if abs(mfe+8.1)<=1.0 else 'FAIL'})")
print("params written")
