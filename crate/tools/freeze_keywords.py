"""Generate the frozen Harvard keyword table from data/corpora/harvard.tsv.

Keywords are every word outside STOP_WORDS, lowercased, punctuation stripped,
in sentence order. Run once; the output is committed so scores stay stable.
"""
import re
from pathlib import Path

STOP_WORDS = set("""
a an the and or but nor so yet of in on at to for from by with as into onto
upon is was are were be been am it its that this these those he she they his
her him them we us our you your i my me their there then than when which who
whom what where can did do does has had have will would shall should may might
must not no if
""".split())

root = Path(__file__).resolve().parent.parent / "data" / "corpora"
rows = []
for line in (root / "harvard.tsv").read_text(encoding="utf-8").splitlines():
    if not line or line.startswith("#"):
        continue
    lst, item, sentence = line.split("\t")
    words = [re.sub(r"^[^a-z0-9]+|[^a-z0-9]+$", "", w.lower()) for w in sentence.split()]
    keys = [w for w in words if w and w not in STOP_WORDS]
    rows.append(f"{lst}\t{item}\t{' '.join(keys)}")
(root / "harvard_keywords.tsv").write_text(
    "# list\titem\tkeywords (space separated, sentence order)\n" + "\n".join(rows) + "\n",
    encoding="utf-8",
)
