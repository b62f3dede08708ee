"""Build the part-of-speech resources shipped under data/.

Inputs (all from the pattern3 3.0.0 source distribution, BSD licensed, with
WordNet 3.0 under the Princeton license):
  test/corpora/tagged-en-oanc.txt         Penn-tagged OANC sentences
  pattern3/text/en/en-lexicon.txt         Brill lexicon (word TAG)
  pattern3/text/en/en-verbs.txt           verb inflection table
  pattern3/text/en/wordnet/dict/index.*   WordNet lemma indices

Outputs:
  data/lexicon/mpos.txt       word×CODES lexicon in the MPOS code alphabet
  <rows>                      tagged trigram rows: freq<TAB>w1 w2 w3<TAB>claws7 x3
  data/pos/heldout_brown.txt  held-out sentences as word/BROWNTAG tokens

The trigram rows are fed to `tts build-tagger` to produce data/pos/model.tsv.

usage: build_pos_data.py <pattern3-root> <rows-out>
"""
import collections
import re
import sys
from pathlib import Path

HELDOUT = 2000
MIN_CODE_COUNT = 3
MIN_CODE_SHARE = 0.05
CLOSED = set("CPrDI")

SUBORDINATORS = {
    "because", "if", "although", "though", "while", "whether", "since", "unless",
    "until", "that", "as", "once", "whereas", "than", "so", "after", "before",
}
PUNCT_TAGS = {".", ",", ":", "``", "''", "(", ")", "-LRB-", "-RRB-", "#", "$", "HYPH", "NFP"}


def penn_to_claws7(word, tag):
    w = word.lower()
    simple = {
        "NN": "NN1", "NNS": "NN2", "NNP": "NP1", "NNPS": "NP2",
        "VB": "VVI", "VBD": "VVD", "VBG": "VVG", "VBN": "VVN", "VBP": "VV0", "VBZ": "VVZ",
        "MD": "VM", "JJ": "JJ", "JJR": "JJR", "JJS": "JJT",
        "RB": "RR", "RBR": "RRR", "RBS": "RRT", "RP": "RP",
        "PRP$": "APPGE", "WP$": "DDQGE", "WDT": "DDQ", "WRB": "RRQ",
        "TO": "TO", "CD": "MC", "EX": "EX", "UH": "UH", "FW": "FW",
        "POS": "GE", "SYM": "FO", "LS": "FO", "PDT": "DB",
    }
    if tag == "IN":
        if w == "of":
            return "IO"
        if w == "for":
            return "IF"
        if w in ("with", "without"):
            return "IW"
        if w in SUBORDINATORS:
            return {"that": "CST", "whether": "CSW", "as": "CSA", "than": "CSN"}.get(w, "CS")
        return "II"
    if tag == "CC":
        return "CCB" if w == "but" else "CC"
    if tag == "DT":
        if w in ("the", "no"):
            return "AT"
        if w in ("a", "an", "every"):
            return "AT1"
        if w in ("this", "that", "another"):
            return "DD1"
        if w in ("these", "those"):
            return "DD2"
        if w in ("all", "half"):
            return "DB"
        if w == "both":
            return "DB2"
        return "DD"
    if tag == "PRP":
        return {
            "i": "PPIS1", "me": "PPIO1", "we": "PPIS2", "us": "PPIO2", "you": "PPY",
            "he": "PPHS1", "she": "PPHS1", "him": "PPHO1", "her": "PPHO1", "it": "PPH1",
            "they": "PPHS2", "them": "PPHO2",
        }.get(w, "PPX1" if w.endswith("self") else "PPX2" if w.endswith("selves") else "PPY")
    if tag == "WP":
        return "PNQO" if w == "whom" else "PNQS"
    if tag in simple:
        return simple[tag]
    return None


BE = {"be": "BE", "were": "BED", "was": "BEDZ", "being": "BEG", "am": "BEM",
      "been": "BEN", "are": "BER", "art": "BER", "is": "BEZ"}
HAVE = {"have": "HV", "has": "HVZ", "had": "HVD", "having": "HVG"}
DO = {"do": "DO", "did": "DOD", "does": "DOZ"}


def penn_to_brown(word, tag):
    w = word.lower()
    if tag.startswith("VB") or tag == "MD":
        if w in BE:
            return BE[w]
        if w in HAVE and tag != "MD":
            return HAVE[w]
        if w in DO:
            return DO[w]
    simple = {
        "NN": "NN", "NNS": "NNS", "NNP": "NP", "NNPS": "NPS",
        "VB": "VB", "VBD": "VBD", "VBG": "VBG", "VBN": "VBN", "VBP": "VB", "VBZ": "VBZ",
        "MD": "MD", "JJ": "JJ", "JJR": "JJR", "JJS": "JJT",
        "RB": "RB", "RBR": "RBR", "RBS": "RBT", "RP": "RP",
        "PRP$": "PP$", "WP$": "WP$", "WDT": "WDT", "WRB": "WRB",
        "TO": "TO", "CD": "CD", "EX": "EX", "UH": "UH", "FW": "FW", "PDT": "ABN",
    }
    if tag == "IN":
        return "CS" if w in SUBORDINATORS else "IN"
    if tag == "CC":
        return "CC"
    if tag == "DT":
        if w in ("a", "an", "the", "no", "every"):
            return "AT"
        if w in ("these", "those"):
            return "DTS"
        if w in ("some", "any"):
            return "DTI"
        if w in ("all", "half"):
            return "ABN"
        if w == "both":
            return "ABX"
        if w == "either":
            return "DTX"
        return "DT"
    if tag == "PRP":
        if w in ("i", "we", "they", "you"):
            return "PPSS"
        if w in ("he", "she", "it"):
            return "PPS"
        if w.endswith("selves"):
            return "PPLS"
        if w.endswith("self"):
            return "PPL"
        return "PPO"
    if tag == "WP":
        return "WPO" if w == "whom" else "WPS"
    return simple.get(tag)


def penn_to_mpos(word, tag):
    w = word.lower()
    if tag in ("NN", "NNP", "CD", "EX"):
        return "N"
    if tag in ("NNS", "NNPS"):
        return "p"
    if tag in ("VB", "VBP"):
        return "t"
    if tag in ("VBD", "VBG", "VBN", "VBZ", "MD"):
        return "V"
    if tag.startswith("JJ"):
        return "A"
    if tag.startswith("RB") or tag in ("RP", "WRB", "TO"):
        return "v"
    if tag == "IN":
        return "C" if w in SUBORDINATORS - {"as", "after", "before", "since", "until"} else "P"
    if tag == "CC":
        return "C"
    if tag == "DT":
        return "I" if w in ("a", "an") else "D"
    if tag in ("PDT", "WDT", "PRP$", "WP$"):
        return "D"
    if tag in ("PRP", "WP"):
        return "r"
    if tag == "UH":
        return "!"
    return None


def read_oanc(path):
    sents = []
    for line in path.read_text(encoding="utf-8").splitlines():
        toks = []
        for item in line.split():
            word, _, tag = item.rpartition("/")
            if word:
                toks.append((word, tag))
        if toks:
            sents.append(toks)
    return sents


def main():
    root = Path(sys.argv[1])
    rows_out = Path(sys.argv[2])
    repo = Path(__file__).resolve().parent.parent
    sents = read_oanc(root / "test/corpora/tagged-en-oanc.txt")
    train, held = sents[:-HELDOUT], sents[-HELDOUT:]

    # Tagged trigram rows (punctuation is invisible to the tagger, so skip it).
    rows = collections.Counter()
    for s in train:
        run = []
        for word, tag in s:
            if tag in PUNCT_TAGS or not re.search(r"[A-Za-z0-9]", word):
                if tag == "." or word in ("?", "!"):
                    run.append(None)
                continue
            c7 = penn_to_claws7(word, tag)
            if c7 is None or tag == "POS":
                continue
            run.append((word, c7.lower()))
        chunk = []
        for t in run + [None]:
            if t is None:
                for i in range(len(chunk) - 2):
                    tri = chunk[i:i + 3]
                    rows[(" ".join(w for w, _ in tri), " ".join(c for _, c in tri))] += 1
                chunk = []
            else:
                chunk.append(t)
    with rows_out.open("w", encoding="utf-8") as f:
        f.write("# frequency\twords\tclaws7 tags\n")
        for (words, tags), n in sorted(rows.items(), key=lambda kv: (-kv[1], kv[0])):
            f.write(f"{n}\t{words}\t{tags}\n")

    # Held-out evaluation sentences with Brown tags.
    (repo / "data/pos").mkdir(parents=True, exist_ok=True)
    with (repo / "data/pos/heldout_brown.txt").open("w", encoding="utf-8") as f:
        for s in held:
            out = []
            for word, tag in s:
                if tag == "POS":
                    continue
                if tag in PUNCT_TAGS or not re.search(r"[A-Za-z0-9]", word):
                    out.append(f"{word}/{word}")
                    continue
                b = penn_to_brown(word, tag)
                out.append(f"{word}/{b if b else 'FW'}")
            if out:
                f.write(" ".join(out) + "\n")

    # MPOS-style lexicon.
    codes = collections.defaultdict(collections.Counter)
    for s in train:
        for word, tag in s:
            if not re.fullmatch(r"[A-Za-z][A-Za-z'\-]*", word):
                continue
            c = penn_to_mpos(word, tag)
            if c:
                codes[word.lower()][c] += 1
    # Secondary readings need a few sightings; one-off tagging noise would
    # otherwise give "the" a noun reading.
    entries = {}
    for w, cnt in codes.items():
        total = sum(cnt.values())
        ranked = cnt.most_common()
        entries[w] = [ranked[0][0]] + [
            c for c, n in ranked[1:] if n >= MIN_CODE_COUNT and n >= MIN_CODE_SHARE * total
        ]
    function_words = {w for w, lst in entries.items() if lst[0] in CLOSED}

    def add(word, code):
        if word.lower() in function_words:
            return
        lst = entries.setdefault(word, [])
        if code not in lst:
            lst.append(code)

    en = root / "pattern3/text/en"
    for line in (en / "en-lexicon.txt").read_text(encoding="utf-8").splitlines():
        if line.startswith(";;;") or " " not in line:
            continue
        word, tag = line.split(" ", 1)
        if not re.fullmatch(r"[A-Za-z][A-Za-z'\-]*", word):
            continue
        c = penn_to_mpos(word, tag.strip())
        if c:
            add(word if word != word.lower() else word, c)
    for suffix, code in (("noun", "N"), ("verb", "t"), ("adj", "A"), ("adv", "v")):
        for line in (en / f"wordnet/dict/index.{suffix}").read_text(encoding="latin-1").splitlines():
            if line.startswith(" "):
                continue
            lemma = line.split(" ", 1)[0]
            if re.fullmatch(r"[a-z][a-z'\-]*", lemma):
                add(lemma, code)
    for line in (en / "en-verbs.txt").read_text(encoding="utf-8").splitlines():
        if line.startswith(";"):
            continue
        forms = [f for f in line.split(",") if f]
        for form in forms[1:]:
            if re.fullmatch(r"[a-z][a-z'\-]*", form):
                add(form, "V")

    (repo / "data/lexicon").mkdir(parents=True, exist_ok=True)
    with (repo / "data/lexicon/mpos.txt").open("w", encoding="utf-8") as f:
        for word in sorted(entries):
            f.write(f"{word}×{''.join(entries[word])}\n")


if __name__ == "__main__":
    main()
