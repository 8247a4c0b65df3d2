#!/usr/bin/env python3
"""Generate the bundled two-language corpus fixtures.

Language A is the training-side language: SVO order, five noun cases
(Nom/Acc/Gen/Loc/Com) with two systematic surface collisions (Gen singular =
Acc singular, Com singular = Loc plural). Language B is the evaluation-side
language: SOV order, the A locative split into inessive/elative, plus
illative and essive, with its own collisions (Ill plural = Acc plural,
Ess = Ine plural = Com singular). The templates file mirrors the six
evaluation-side sentence patterns with two fixed pronoun forms.

Deterministic: fixed seeds, sorted iteration. Output is committed; rerun only
to regenerate from scratch.
"""

import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"

TAG2FEATS = {
    "Sg": ["Number=Sing"],
    "Pl": ["Number=Plur"],
    "Nom": ["Case=Nom"],
    "Acc": ["Case=Acc"],
    "Gen": ["Case=Gen"],
    "Ill": ["Case=Ill"],
    "Ine": ["Case=Ine"],
    "Ela": ["Case=Ela"],
    "Loc": ["Case=Loc"],
    "Com": ["Case=Com"],
    "Ess": ["Case=Ess"],
    "Ind": ["Mood=Ind", "VerbForm=Fin"],
    "Prs": ["Tense=Pres"],
    "Prt": ["Tense=Past"],
    "Sg1": ["Number=Sing", "Person=1"],
    "Sg3": ["Number=Sing", "Person=3"],
    "Pl3": ["Number=Plur", "Person=3"],
    "Ger": ["VerbForm=Ger"],
    "Pron": ["PronType=Prs"],
    "TV": [],
    "IV": [],
    "N": [],
    "V": [],
    "Adv": [],
}

# ---------------- language A ----------------

A_NOUNS = [
    "kala", "sorsa", "marja", "kirja", "metsa", "ranta", "silta", "hauta",
    "salama", "verta", "velka", "lampa", "norppa", "vanta", "kelkka", "leipa",
    "seina", "kukka", "lintua", "herkka",
]
A_TV = ["ostata", "lukita", "vetata", "kantata", "mittata", "nostata", "pesata", "rakenta"]
A_IV = ["asua", "istua", "nukkua", "juoksua", "uinua", "kasvua"]
A_ADV = ["nyt", "usein", "aina", "ehka", "harvoin"]

A_PARADIGMS = """# Language A paradigms: suffix substitution on the lemma.
# n-a collisions: Gen Sg = Acc Sg (-n), Com Sg = Loc Pl (-ine).
paradigm n-a N
\tN+Sg+Nom\t-0/+0
\tN+Sg+Acc\t-0/+n
\tN+Sg+Gen\t-0/+n
\tN+Sg+Loc\t-0/+ssa
\tN+Sg+Com\t-0/+ine
\tN+Pl+Nom\t-0/+t
\tN+Pl+Acc\t-0/+it
\tN+Pl+Gen\t-0/+iden
\tN+Pl+Loc\t-0/+ine
\tN+Pl+Com\t-0/+ineni

paradigm v-ta V
\tV+TV+Ind+Prs+Sg1\t-ta/+tan
\tV+TV+Ind+Prs+Sg3\t-ta/+taa
\tV+TV+Ind+Prs+Pl3\t-ta/+tavat
\tV+TV+Ind+Prt+Sg3\t-ta/+ti

paradigm v-ua V
\tV+IV+Ind+Prs+Sg3\t-ua/+uu
\tV+IV+Ind+Prs+Pl3\t-ua/+uvat
\tV+IV+Ind+Prt+Sg3\t-ua/+ui

paradigm adv Adv
\tAdv\t-0/+0
"""

# Each skeleton is a list of (slot_kind, tags) in A's SVO order; "." closes
# every sentence. Slot kinds: NOUN draws from A_NOUNS, TV/IV from the verb
# lists, ADV from A_ADV.
A_SKELETONS = [
    [("NOUN", ["N", "Sg", "Nom"]), ("TV", ["V", "TV", "Ind", "Prs", "Sg3"]), ("NOUN", ["N", "Sg", "Acc"])],
    [("NOUN", ["N", "Sg", "Nom"]), ("TV", ["V", "TV", "Ind", "Prs", "Sg3"]), ("NOUN", ["N", "Pl", "Acc"])],
    [("NOUN", ["N", "Pl", "Nom"]), ("TV", ["V", "TV", "Ind", "Prs", "Pl3"]), ("NOUN", ["N", "Sg", "Acc"])],
    [("NOUN", ["N", "Sg", "Nom"]), ("IV", ["V", "IV", "Ind", "Prs", "Sg3"])],
    [("NOUN", ["N", "Pl", "Nom"]), ("IV", ["V", "IV", "Ind", "Prs", "Pl3"])],
    [("NOUN", ["N", "Sg", "Nom"]), ("IV", ["V", "IV", "Ind", "Prs", "Sg3"]), ("NOUN", ["N", "Pl", "Loc"])],
    [("NOUN", ["N", "Sg", "Nom"]), ("TV", ["V", "TV", "Ind", "Prs", "Sg3"]), ("NOUN", ["N", "Sg", "Acc"]), ("NOUN", ["N", "Sg", "Com"])],
    [("NOUN", ["N", "Sg", "Gen"]), ("NOUN", ["N", "Sg", "Nom"]), ("IV", ["V", "IV", "Ind", "Prs", "Sg3"])],
    [("NOUN", ["N", "Sg", "Nom"]), ("TV", ["V", "TV", "Ind", "Prt", "Sg3"]), ("NOUN", ["N", "Sg", "Acc"])],
    [("ADV", ["Adv"]), ("NOUN", ["N", "Sg", "Nom"]), ("IV", ["V", "IV", "Ind", "Prs", "Sg3"])],
    [("NOUN", ["N", "Sg", "Nom"]), ("IV", ["V", "IV", "Ind", "Prs", "Sg3"]), ("NOUN", ["N", "Sg", "Loc"])],
    [("NOUN", ["N", "Pl", "Gen"]), ("NOUN", ["N", "Sg", "Nom"]), ("TV", ["V", "TV", "Ind", "Prs", "Sg3"]), ("NOUN", ["N", "Sg", "Acc"])],
]

A_SUFFIX = {
    ("N", "Sg", "Nom"): ("", ""), ("N", "Sg", "Acc"): ("", "n"),
    ("N", "Sg", "Gen"): ("", "n"), ("N", "Sg", "Loc"): ("", "ssa"),
    ("N", "Sg", "Com"): ("", "ine"), ("N", "Pl", "Nom"): ("", "t"),
    ("N", "Pl", "Acc"): ("", "it"), ("N", "Pl", "Gen"): ("", "iden"),
    ("N", "Pl", "Loc"): ("", "ine"), ("N", "Pl", "Com"): ("", "ineni"),
    ("V", "TV", "Ind", "Prs", "Sg1"): ("ta", "tan"),
    ("V", "TV", "Ind", "Prs", "Sg3"): ("ta", "taa"),
    ("V", "TV", "Ind", "Prs", "Pl3"): ("ta", "tavat"),
    ("V", "TV", "Ind", "Prt", "Sg3"): ("ta", "ti"),
    ("V", "IV", "Ind", "Prs", "Sg3"): ("ua", "uu"),
    ("V", "IV", "Ind", "Prs", "Pl3"): ("ua", "uvat"),
    ("V", "IV", "Ind", "Prt", "Sg3"): ("ua", "ui"),
    ("Adv",): ("", ""),
}

# ---------------- language B ----------------

B_NOUNS = [
    "guole", "maane", "jaevre", "johke", "staare", "gaedtie", "bisse",
    "laante", "voengele", "miere", "saelie", "baernie", "gierehtse", "daelvie",
]
B_TV = ["vuejnedh", "damtedh", "utnedh", "lohkedh", "baajedh"]
B_IV = ["vaedtsedh", "baetsedh", "minnedh", "jielledh"]
B_ADV = ["daelie", "dovne", "jeenje", "varke"]

B_PARADIGMS = """# Language B paradigms. The A locative splits into Ine/Ela here; collisions:
# Ill Pl = Acc Pl (-jde) and Ess = Ine Pl = Com Sg (-ine).
paradigm n-b N
\tN+Sg+Nom\t-0/+0
\tN+Sg+Acc\t-0/+m
\tN+Sg+Ill\t-0/+se
\tN+Sg+Ine\t-0/+sne
\tN+Sg+Ela\t-0/+ste
\tN+Sg+Com\t-0/+ine
\tN+Ess\t-0/+ine
\tN+Pl+Nom\t-0/+h
\tN+Pl+Acc\t-0/+jde
\tN+Pl+Ill\t-0/+jde
\tN+Pl+Ine\t-0/+ine
\tN+Pl+Ela\t-0/+jste

paradigm v-b-tv V
\tV+TV+Ind+Prs+Sg1\t-edh/+em
\tV+TV+Ind+Prs+Sg3\t-edh/+a
\tV+TV+Ger\t-edh/+eminie

paradigm v-b-iv V
\tV+IV+Ind+Prs+Sg1\t-edh/+em
\tV+IV+Ind+Prs+Sg3\t-edh/+a

paradigm adv-b Adv
\tAdv\t-0/+0

paradigm pron-1 Pron
\tPron+Sg1+Nom\t-0/+0
\tPron+Sg1+Acc\t-0/+m

paradigm pron-3 Pron
\tPron+Sg3+Nom\t-0/+0
\tPron+Sg3+Acc\t-ese/+emse
"""

B_SUFFIX = {
    ("N", "Sg", "Nom"): ("", ""), ("N", "Sg", "Acc"): ("", "m"),
    ("N", "Sg", "Ill"): ("", "se"), ("N", "Sg", "Ine"): ("", "sne"),
    ("N", "Sg", "Ela"): ("", "ste"), ("N", "Sg", "Com"): ("", "ine"),
    ("N", "Ess"): ("", "ine"), ("N", "Pl", "Nom"): ("", "h"),
    ("N", "Pl", "Acc"): ("", "jde"), ("N", "Pl", "Ill"): ("", "jde"),
    ("N", "Pl", "Ine"): ("", "ine"), ("N", "Pl", "Ela"): ("", "jste"),
    ("V", "TV", "Ind", "Prs", "Sg1"): ("edh", "em"),
    ("V", "TV", "Ind", "Prs", "Sg3"): ("edh", "a"),
    ("V", "TV", "Ger"): ("edh", "eminie"),
    ("V", "IV", "Ind", "Prs", "Sg1"): ("edh", "em"),
    ("V", "IV", "Ind", "Prs", "Sg3"): ("edh", "a"),
    ("Adv",): ("", ""),
}

# Evaluation skeletons. The first six mirror the bundled templates (SOV, no
# punctuation, exactly the template slot tags); the rest are further SOV
# patterns with a closing period.
B_TEMPLATE_SKELETONS = [
    [("NOUN", ["N", "Sg", "Nom"]), ("NOUN", ["N", "Sg", "Ill"]), ("IV", ["V", "IV", "Ind", "Prs", "Sg3"])],
    [("NOUN", ["N", "Sg", "Nom"]), ("ADV", ["Adv"]), ("TV", ["V", "TV", "Ger"])],
    [("NOUN", ["N", "Sg", "Nom"]), ("NOUN", ["N", "Sg", "Ine"])],
    [("FIXED:mannem", ["Pron", "Sg1", "Acc"]), ("NOUN", ["N", "Sg", "Acc"]), ("TV", ["V", "TV", "Ind", "Prs", "Sg1"])],
    [("NOUN", ["N", "Sg", "Nom"]), ("NOUN", ["N", "Sg", "Ela"]), ("IV", ["V", "IV", "Ind", "Prs", "Sg3"])],
    [("FIXED:altemse", ["Pron", "Sg3", "Acc"]), ("TV", ["V", "TV", "Ind", "Prs", "Sg1"]), ("NOUN", ["N", "Ess"])],
]
B_OTHER_SKELETONS = [
    [("NOUN", ["N", "Sg", "Nom"]), ("NOUN", ["N", "Pl", "Acc"]), ("TV", ["V", "TV", "Ind", "Prs", "Sg3"])],
    [("NOUN", ["N", "Sg", "Nom"]), ("NOUN", ["N", "Pl", "Ill"]), ("IV", ["V", "IV", "Ind", "Prs", "Sg3"])],
    [("NOUN", ["N", "Sg", "Nom"]), ("NOUN", ["N", "Pl", "Ine"]), ("IV", ["V", "IV", "Ind", "Prs", "Sg3"])],
    [("NOUN", ["N", "Sg", "Nom"]), ("NOUN", ["N", "Sg", "Acc"]), ("TV", ["V", "TV", "Ind", "Prs", "Sg3"])],
]

TEMPLATES_TXT = """# Six evaluation-language sentence templates: parenthesized slots are filled
# from the lexicon, bare words stay fixed. Targets give per-word annotations.

src: (N Sg Nom) (N Sg Ill) (V IV Ind Prs Sg3)
tgt: (N Case=Nom Number=Sing) (N Case=Ill Number=Sing) (V Mood=Ind Number=Sing Person=3 Tense=Pres VerbForm=Fin)

src: (N Sg Nom) (Adv) (V TV Ger)
tgt: (N Case=Nom Number=Sing) (Adv) (V VerbForm=Ger)

src: (N Sg Nom) (N Sg Ine)
tgt: (N Case=Nom Number=Sing) (N Case=Ine Number=Sing)

src: mannem (N Sg Acc) (V TV Ind Prs Sg1)
tgt: (Pron Case=Acc Number=Sing Person=1 PronType=Prs) (N Case=Acc Number=Sing) (V Mood=Ind Number=Sing Person=1 Tense=Pres VerbForm=Fin)

src: (N Sg Nom) (N Sg Ela) (V IV Ind Prs Sg3)
tgt: (N Case=Nom Number=Sing) (N Case=Ela Number=Sing) (V Mood=Ind Number=Sing Person=3 Tense=Pres VerbForm=Fin)

src: altemse (V TV Ind Prs Sg1) (N Ess)
tgt: (Pron Case=Acc Number=Sing Person=3 PronType=Prs) (V Mood=Ind Number=Sing Person=1 Tense=Pres VerbForm=Fin) (N Case=Ess)
"""


def inflect(lemma, tags, suffixes):
    strip, append = suffixes[tuple(tags)]
    assert lemma.endswith(strip), (lemma, tags)
    return lemma[: len(lemma) - len(strip)] + append


def feats_of(tags):
    feats = set()
    for t in tags:
        feats.update(TAG2FEATS[t])
    return feats


def conllu_sentence(rows):
    """rows: list of (form, lemma, upos, feats-set)."""
    lines = ["# text = " + " ".join(r[0] for r in rows)]
    for i, (form, lemma, upos, feats) in enumerate(rows, 1):
        fcol = "|".join(sorted(feats)) if feats else "_"
        lines.append(f"{i}\t{form}\t{lemma}\t{upos}\t_\t{fcol}\t_\t_\t_\t_")
    return "\n".join(lines) + "\n\n"


def build_sentence(skeleton, rng, nouns, tvs, ivs, advs, suffixes, fixed_lemmas,
                   period):
    rows = []
    used = set()

    def draw(pool):
        lemma = rng.choice(pool)
        while lemma in used and len(pool) > len(used):
            lemma = rng.choice(pool)
        used.add(lemma)
        return lemma

    for kind, tags in skeleton:
        if kind.startswith("FIXED:"):
            form = kind.split(":", 1)[1]
            lemma = fixed_lemmas[form]
        else:
            pool = {"NOUN": nouns, "TV": tvs, "IV": ivs, "ADV": advs}[kind]
            lemma = draw(pool)
            form = inflect(lemma, tags, suffixes)
        rows.append((form, lemma, tags[0], feats_of(tags)))
    if period:
        rows.append((".", ".", "CLB", set()))
    return rows


def write_lexicon(path, entries):
    lines = ["# lemma<TAB>pos<TAB>paradigm"]
    for lemma, pos, pid in entries:
        lines.append(f"{lemma}\t{pos}\t{pid}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def main():
    lang_a = DATA / "langA"
    lang_b = DATA / "langB"
    configs = DATA / "configs"
    for d in (lang_a, lang_b, configs):
        d.mkdir(parents=True, exist_ok=True)

    # language A
    entries_a = [(n, "N", "n-a") for n in A_NOUNS]
    entries_a += [(v, "V", "v-ta") for v in A_TV]
    entries_a += [(v, "V", "v-ua") for v in A_IV]
    entries_a += [(a, "Adv", "adv") for a in A_ADV]
    write_lexicon(lang_a / "lexicon.tsv", entries_a)
    (lang_a / "paradigms.txt").write_text(A_PARADIGMS, encoding="utf-8")

    rng = random.Random(414)
    sents = []
    for i in range(320):
        skeleton = A_SKELETONS[i % len(A_SKELETONS)]
        sents.append(
            build_sentence(skeleton, rng, A_NOUNS, A_TV, A_IV, A_ADV, A_SUFFIX,
                           {}, period=True))
    (lang_a / "treebank.conllu").write_text(
        "".join(conllu_sentence(s) for s in sents), encoding="utf-8")

    # language B
    entries_b = [(n, "N", "n-b") for n in B_NOUNS]
    entries_b += [(v, "V", "v-b-tv") for v in B_TV]
    entries_b += [(v, "V", "v-b-iv") for v in B_IV]
    entries_b += [(a, "Adv", "adv-b") for a in B_ADV]
    entries_b += [("manne", "Pron", "pron-1"), ("altese", "Pron", "pron-3")]
    write_lexicon(lang_b / "lexicon.tsv", entries_b)
    (lang_b / "paradigms.txt").write_text(B_PARADIGMS, encoding="utf-8")
    (lang_b / "templates.txt").write_text(TEMPLATES_TXT, encoding="utf-8")

    fixed = {"mannem": "manne", "altemse": "altese"}
    rng = random.Random(515)
    sents = []
    for rep in range(12):
        for skeleton in B_TEMPLATE_SKELETONS:
            sents.append(
                build_sentence(skeleton, rng, B_NOUNS, B_TV, B_IV, B_ADV,
                               B_SUFFIX, fixed, period=False))
    for rep in range(10):
        for skeleton in B_OTHER_SKELETONS:
            sents.append(
                build_sentence(skeleton, rng, B_NOUNS, B_TV, B_IV, B_ADV,
                               B_SUFFIX, fixed, period=True))
    (lang_b / "gold.conllu").write_text(
        "".join(conllu_sentence(s) for s in sents), encoding="utf-8")

    common = """[paths]
lexicon = ../langA/lexicon.tsv
paradigms = ../langA/paradigms.txt
eval_lexicon = ../langB/lexicon.tsv
eval_paradigms = ../langB/paradigms.txt
mapping = ../mapping.txt
templates = ../langB/templates.txt
treebank = ../langA/treebank.conllu
gold = ../langB/gold.conllu
outdir = out

[model]
emb_dim = 32
hidden_dim = 64
cell = lstm
max_src_len = 96
max_tgt_len = 96
seed = 1

[train]
batch_size = 8
optimizer = adam
lr = 0.004
grad_clip = 5.0

[expansion]
per_template = 20
seed = 1
max_attempts = 100
"""
    (configs / "end_to_end.cfg").write_text(
        common.replace("[train]\n", "[train]\nsteps = 1800\n"),
        encoding="utf-8")
    (configs / "determinism.cfg").write_text(
        common.replace("[train]\n", "[train]\nsteps = 40\n"),
        encoding="utf-8")
    print("fixtures written under", DATA)


if __name__ == "__main__":
    main()
