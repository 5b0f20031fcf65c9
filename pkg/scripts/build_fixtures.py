"""Regenerate the bundled demo projects under src/morphrex/fixtures/.

Each project file is self-contained (lexicon inline) and normalized through
a load/serialize round trip so the checked-in bytes stay canonical.
"""

from pathlib import Path

from morphrex.fileio import project_from_json, project_to_json, write_canonical_json

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "morphrex" / "fixtures"


def entry(form, glosses=(), categories=(), number=None, pos=None):
    data = {"form": form}
    if pos:
        data["pos"] = pos
    if glosses:
        data["glosses"] = list(glosses)
    if categories:
        data["categories"] = list(categories)
    if number is not None:
        data["numericValue"] = number
    return data


def category_tag(label, category, description, color, flags=()):
    tag = {
        "label": label,
        "formula": {
            "terms": [{"feature": "category", "predicate": "isA", "value": category}]
        },
        "description": description,
        "legend": {"color": color},
    }
    if flags:
        tag["legend"]["fontFlags"] = list(flags)
    return tag


def stem_tag(label, stems, description, color, flags=()):
    tag = {
        "label": label,
        "formula": {
            "terms": [
                {"feature": "stem", "predicate": "isA", "value": s} for s in stems
            ]
        },
        "description": description,
        "legend": {"color": color},
    }
    if flags:
        tag["legend"]["fontFlags"] = list(flags)
    return tag


DIRECTION_TEXT = (
    "mn Almst.hyl 'allA tlA.h.z brj xlyfT bAlqrb mn AltqA.t` Al-'wl "
    "w'ant tqwd syArtk fy ^sAr` Al^say_h zAyd, .htt_A w'in kAnt h_dh AlmrT "
    "Al-'wl_A Alty tslk fyhA h_dA AlTryq; yq` dby mwl `l_A mqrbT mn h_dA "
    "Almbn_A Al_dy yu`d Al'aTwl fy Al`Alm.\n"
)


def direction_project():
    lexicon = {
        "version": "1",
        "categories": ["Name_of_Person", "Name_of_Place"],
        "prefixes": [entry("b"), entry("Al"), entry("Al-")],
        "suffixes": [entry("T"), entry("_A"), entry("hA")],
        "stems": [
            entry("brj", glosses=["tower"], categories=["Name_of_Place"]),
            entry("xlyfT", glosses=["Khalifa"], categories=["Name_of_Person"]),
            entry("qrb", glosses=["next to"]),
            entry("mqrb", glosses=["near"]),
            entry("fy", glosses=["in"]),
            entry("tqA.t`", glosses=["intersection"], categories=["Name_of_Place"]),
            entry("'wl", glosses=["first"]),
            entry("^sAr`", glosses=["street"], categories=["Name_of_Place"]),
            entry("^say_h", glosses=["sheikh"], categories=["Name_of_Person"]),
            entry("zAyd", glosses=["Zayed"], categories=["Name_of_Person"]),
            entry("Tryq", glosses=["road"], categories=["Name_of_Place"]),
            entry("dby", glosses=["Dubai"], categories=["Name_of_Place"]),
            entry("mwl", glosses=["mall"], categories=["Name_of_Place"]),
            entry("mbn_A", glosses=["building"], categories=["Name_of_Place"]),
            # never appears in text; bridges tower and building glosses
            entry("`mArT", glosses=["tower", "building"]),
        ],
    }
    return {
        "version": "1",
        "name": "direction",
        "lexicon": lexicon,
        "tagTypes": [
            category_tag("P", "Name_of_Place", "name of place", "#1a7f37"),
            category_tag("N", "Name_of_Person", "name of person", "#0550ae", ["bold"]),
            stem_tag("R", ["qrb", "mqrb", "fy"], "relative position", "#cf222e"),
            stem_tag("U", ["'wl", "_tAny"], "numerical term", "#8250df", ["italic"]),
            {"label": "DIR", "rule": "direction", "description": "spatial phrase"},
        ],
        "rules": "direction: $e1=(P|N)+ $o1=NONE? $r=R $o2=NONE^2 $e2=(P|N|U)+;\n",
        "relations": [
            {
                "rule": "direction",
                "name": "spatial",
                "source": "e1",
                "destination": "e2",
                "label": "r.gloss",
            },
            {
                "rule": "direction",
                "name": "subject",
                "source": "r",
                "destination": "e1",
                "label": "o1",
            },
            {
                "rule": "direction",
                "name": "object",
                "source": "r",
                "destination": "e2",
                "label": "o2",
            },
        ],
        "synCrossReference": True,
    }


NARRATORS_TEXT = "حدثنا قتيبة بن سعيد حدثنا جرير عن عمارة بن القعقاع\n"

NARRATORS_RULES = """\
name: PN (MEAN? PN)*;
nar: name (NONE^3 FAM NONE^3 name)*;
pbuh: BLESS GOD UPONHIM GREET;
nchain: ($s1=TOLD $s2=nar)+ ((PN|FAM|NONE)^8 pbuh)?;
"""


def narrators_project():
    person = ["Name_of_Person"]
    lexicon = {
        "version": "1",
        "categories": ["Name_of_Person"],
        "prefixes": [entry("ال")],
        "suffixes": [entry("نا")],
        "stems": [
            entry("حدث", glosses=["spoke to"]),
            entry("عن", glosses=["about"]),
            entry("سمع", glosses=["heard"]),
            entry("أخبر", glosses=["told"]),
            entry("أنبأ", glosses=["inform"]),
            entry("عنى", glosses=["mean"]),
            entry("بن", glosses=["son"]),
            entry("قتيبة", glosses=["Qutaybah"], categories=person),
            entry("سعيد", glosses=["Said"], categories=person),
            entry("جرير", glosses=["Jarir"], categories=person),
            entry("عمارة", glosses=["Umarah"], categories=person),
            entry("قعقاع", glosses=["Qaqa"], categories=person),
            entry("صلى", glosses=["bless"]),
            entry("الله", glosses=["God"]),
            entry("علي", glosses=["upon"]),
            entry("سلم", glosses=["greet"]),
        ],
    }
    return {
        "version": "1",
        "name": "narrators",
        "lexicon": lexicon,
        "tagTypes": [
            category_tag("PN", "Name_of_Person", "proper noun", "#0550ae", ["bold"]),
            {
                "label": "FAM",
                "formula": {
                    "terms": [{"feature": "gloss", "predicate": "isA", "value": "son"}]
                },
                "description": "family connector",
                "legend": {"color": "#1a7f37"},
            },
            stem_tag(
                "TOLD",
                ["حدث", "عن", "سمع", "أخبر", "أنبأ"],
                "narration verb",
                "#cf222e",
            ),
            stem_tag("MEAN", ["عنى"], "alias marker", "#8250df"),
            stem_tag("BLESS", ["صلى"], "", "#57606a"),
            stem_tag("GOD", ["الله"], "", "#57606a"),
            stem_tag("UPONHIM", ["علي"], "", "#57606a"),
            stem_tag("GREET", ["سلم"], "", "#57606a"),
            {"label": "NCHAIN", "rule": "nchain", "description": "narrator chain"},
        ],
        "rules": NARRATORS_RULES,
        "relations": [
            {
                "rule": "nchain",
                "name": "chain",
                "source": "s2",
                "destination": "s2",
                "label": "s1",
                "nextFlag": True,
            }
        ],
        "synCrossReference": True,
    }


NUMBER_STEMS = [
    ("wA.hd", "one", 1),
    ("A_tnAn", "two", 2),
    ("_tlA_tT", "three", 3),
    ("'arb`T", "four", 4),
    ("_hmsT", "five", 5),
    ("sttT", "six", 6),
    ("sb`T", "seven", 7),
    ("_tmAnyT", "eight", 8),
    ("ts`T", "nine", 9),
    ("`a^srT", "ten", 10),
    ("`i^srwn", "twenty", 20),
    ("_tlA_twn", "thirty", 30),
    ("'arb`wn", "forty", 40),
    ("_hmswn", "fifty", 50),
    ("sttwn", "sixty", 60),
    ("sb`wn", "seventy", 70),
    ("_tmAnwn", "eighty", 80),
    ("ts`wn", "ninety", 90),
]

DT_SCRIPT = """\
if (isHundred) {
  currentH += $s0.number;
} else if (current == 0) {
  current = $s0.number;
} else if (isKey) {
  previous += current;
  current = $s0.number;
} else {
  current += $s0.number;
}
isKey = false;
"""

TMB_SCRIPT = """\
print($s1.text);
if (isHundred) {
  if (current != 0) {
    previous += current;
  }
  current = currentH * $s1.number;
  currentH = 0;
  isHundred = false;
  isKey = true;
} else if (current == 0) {
  current = $s1.number;
  isKey = true;
} else if (!isKey) {
  isKey = true;
  current = current * $s1.number;
} else {
  previous += current;
  current = $s1.number;
}
"""

H_SCRIPT = """\
isHundred = true;
if (current == 0) {
  currentH = $s2.number;
} else if (!isKey) {
  currentH = current * $s2.number;
  current = 0;
} else {
  currentH = $s2.number;
}
isKey = false;
"""

FLUSH_SCRIPT = """\
total = previous + current + currentH;
emit("value", total);
previous = 0;
current = 0;
currentH = 0;
isHundred = false;
isKey = false;
"""


def numbers_project():
    stems = [
        entry(form, glosses=[gloss], categories=["Digit_or_Ten"], number=value)
        for form, gloss, value in NUMBER_STEMS
    ]
    stems.append(entry("m'T", glosses=["hundred"], categories=["Hundred"], number=100))
    stems.extend(
        entry(form, glosses=[gloss], categories=["Thousand_Million_Billion"], number=value)
        for form, gloss, value in [
            ("'alf", "thousand", 1000),
            ("mlywn", "million", 1000000),
            ("mlyAr", "billion", 1000000000),
        ]
    )
    lexicon = {
        "version": "1",
        "categories": ["Digit_or_Ten", "Hundred", "Thousand_Million_Billion"],
        "stems": stems,
    }
    return {
        "version": "1",
        "name": "numbers",
        "lexicon": lexicon,
        "tagTypes": [
            category_tag("DT", "Digit_or_Ten", "digit or ten", "#0550ae"),
            category_tag("TMB", "Thousand_Million_Billion", "group weight", "#cf222e"),
            category_tag("H", "Hundred", "hundred marker", "#1a7f37"),
            {"label": "NUM", "rule": "num", "description": "numeral phrase"},
        ],
        "rules": "num: ($s0=DT | $s1=TMB | $s2=H)+;\n",
        "actions": [
            {"rule": "num", "binding": "s0", "phase": "onMatch", "script": DT_SCRIPT},
            {"rule": "num", "binding": "s1", "phase": "onMatch", "script": TMB_SCRIPT},
            {"rule": "num", "binding": "s2", "phase": "onMatch", "script": H_SCRIPT},
            {"rule": "num", "binding": "", "phase": "onMatch", "script": FLUSH_SCRIPT},
        ],
        "synCrossReference": False,
    }


def write_project(name, data):
    project = project_from_json(data)  # validates shape and cross references
    write_canonical_json(project_to_json(project), FIXTURES / f"{name}.project.json")


def main():
    FIXTURES.mkdir(exist_ok=True)
    write_project("direction", direction_project())
    write_project("narrators", narrators_project())
    write_project("numbers", numbers_project())
    (FIXTURES / "direction.doc.txt").write_text(DIRECTION_TEXT, encoding="utf-8")
    (FIXTURES / "narrators.doc.txt").write_text(NARRATORS_TEXT, encoding="utf-8")
    for path in sorted(FIXTURES.iterdir()):
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
