"""Generate the bundled H. sapiens codon usage table (fractions per amino acid)."""
import math

# Kazusa codon usage database, Homo sapiens [gbpri], per-1000 codon counts
# (GenBank CDS totals). Stop codons excluded.
PER1000 = {
    'F': [('UUU', 17.6), ('UUC', 20.3)],
    'L': [('UUA', 7.7), ('UUG', 12.9), ('CUU', 13.2), ('CUC', 19.6), ('CUA', 7.2), ('CUG', 39.6)],
    'I': [('AUU', 16.0), ('AUC', 20.8), ('AUA', 7.5)],
    'M': [('AUG', 22.0)],
    'V': [('GUU', 11.0), ('GUC', 14.5), ('GUA', 7.1), ('GUG', 28.1)],
    'S': [('UCU', 15.2), ('UCC', 17.7), ('UCA', 12.2), ('UCG', 4.4), ('AGU', 12.1), ('AGC', 19.5)],
    'P': [('CCU', 17.5), ('CCC', 19.8), ('CCA', 16.9), ('CCG', 6.9)],
    'T': [('ACU', 13.1), ('ACC', 18.9), ('ACA', 15.1), ('ACG', 6.1)],
    'A': [('GCU', 18.4), ('GCC', 27.7), ('GCA', 15.8), ('GCG', 7.4)],
    'Y': [('UAU', 12.2), ('UAC', 15.3)],
    'H': [('CAU', 10.9), ('CAC', 15.1)],
    'Q': [('CAA', 12.3), ('CAG', 34.2)],
    'N': [('AAU', 17.0), ('AAC', 19.1)],
    'K': [('AAA', 24.4), ('AAG', 31.9)],
    'D': [('GAU', 21.8), ('GAC', 25.1)],
    'E': [('GAA', 29.0), ('GAG', 39.6)],
    'C': [('UGU', 10.6), ('UGC', 12.6)],
    'W': [('UGG', 13.2)],
    'R': [('CGU', 4.5), ('CGC', 10.4), ('CGA', 6.2), ('CGG', 11.4), ('AGA', 12.2), ('AGG', 12.0)],
    'G': [('GGU', 10.8), ('GGC', 22.2), ('GGA', 16.5), ('GGG', 16.5)],
}

lines = [
    "# Codon usage fractions for Homo sapiens.",
    "# Derived from the Kazusa codon usage database (GenBank CDS counts,",
    "# per-1000 values for 'Homo sapiens [gbpri]'), normalized per amino acid",
    "# and rounded to four decimals. Stop codons are omitted.",
    "# Format: one record per line, AA,codon,frequency",
]
table = {}
for aa in sorted(PER1000):
    entries = PER1000[aa]
    total = sum(v for _, v in entries)
    fracs = [(codon, round(v / total, 4)) for codon, v in sorted(entries)]
    table[aa] = fracs
    s = sum(f for _, f in fracs)
    assert abs(s - 1.0) <= 0.02, (aa, s)
    # unique most-frequent codon per amino acid
    mx = max(f for _, f in fracs)
    assert sum(1 for _, f in fracs if f == mx) == 1, (aa, fracs)
    for codon, f in fracs:
        lines.append(f"{aa},{codon},{f:.4f}")

with open('/root/crate/crates/codonfold/data/h_sapiens_codon_usage.csv', 'w') as fh:
    fh.write("\n".join(lines) + "\n")

# verify the CAI fixture: ACUCUGCCGAAGGCAGAC -> ~0.718
def w(aa, codon):
    fr = dict(table[aa])
    return fr[codon] / max(fr.values())

seq = [('T','ACU'), ('L','CUG'), ('P','CCG'), ('K','AAG'), ('A','GCA'), ('D','GAC')]
logs = sum(math.log(w(a, c)) for a, c in seq)
cai = math.exp(logs / len(seq))
print(f"CAI(ACUCUGCCGAAGGCAGAC) = {cai:.6f}  (target 0.718 +/- 0.005: {'OK' if abs(cai-0.718)<=0.005 else 'FAIL'})")
# Table I variant
seq2 = [('T','ACU'), ('L','CUG'), ('P','CCU'), ('K','AAG'), ('A','GCG'), ('D','GAC')]
cai2 = math.exp(sum(math.log(w(a,c)) for a,c in seq2) / 6)
print(f"CAI(ACUCUGCCUAAGGCGGAC) = {cai2:.6f}")
print("table written")
