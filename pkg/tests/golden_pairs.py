"""Published conversion examples used as the golden suite.

Each row is (rule, slang, expected, status):

* ``exact``    - tested against the expected form exactly as printed.
* ``adjusted`` - the printed row is typographically defective (scanner
  noise); tested against the linguistically coherent correction noted
  inline. Four rows qualify.
* one row (``میگردم``) is excluded outright: its printed conversion swaps
  «گ» for «ک» and no orthographic rule can reach it.

Comparison treats space and ZWNJ as ignorable separators because the
source tables typeset the same join three ways («دخترها», «بعضی ها»,
«چشم‌هایت»).

VALIDATOR_WORDS is the formal vocabulary the rows need; words that must
NOT validate (e.g. «عاالی», «چشمت») are deliberately absent.
"""

ZWNJ = "‌"

GOLDEN: list[tuple[str, str, str, str]] = [
    # «ون» -> «ان»
    ("oon_to_aan", "آقایون", "آقایان", "exact"),
    ("oon_to_aan", "اقایون", "اقایان", "exact"),
    ("oon_to_aan", "یکیشون", "یکیشان", "exact"),
    ("oon_to_aan", "شیطون", "شیطان", "exact"),
    ("oon_to_aan", "برگردون", "برگردان", "exact"),
    ("oon_to_aan", "حالشون", "حالشان", "exact"),
    ("oon_to_aan", "اولشون", "اولشان", "exact"),
    ("oon_to_aan", "دمشون", "دمشان", "exact"),
    ("oon_to_aan", "زندگیشون", "زندگیشان", "exact"),
    ("oon_to_aan", "جفتشون", "جفتشان", "exact"),
    # «و» -> «را»
    ("vav_to_ra", "خودمو", "خودم را", "exact"),
    ("vav_to_ra", "داستانو", "داستان را", "exact"),
    ("vav_to_ra", "همینو", "همین را", "exact"),
    ("vav_to_ra", "دهنتو", "دهنت را", "exact"),
    ("vav_to_ra", "چیزو", "چیز را", "exact"),
    ("vav_to_ra", "اسمشو", "اسمش را", "exact"),
    ("vav_to_ra", "مملکتو", "مملکت را", "exact"),
    ("vav_to_ra", "اینجارو", "اینجا را", "exact"),
    ("vav_to_ra", "صدامو", "صدام را", "exact"),
    ("vav_to_ra", "حالمو", "حالم را", "exact"),
    # direct lexicon
    ("direct", "یه", "یک", "exact"),
    ("direct", "باشه", "باشد", "exact"),
    ("direct", "دیگه", "دیگر", "exact"),
    ("direct", "داره", "دارد", "exact"),
    ("direct", "میشه", f"می{ZWNJ}شود", "exact"),
    ("direct", "اگه", "اگر", "exact"),
    ("direct", "میکنه", f"می{ZWNJ}کند", "exact"),
    ("direct", "بشه", "بشود", "exact"),
    ("direct", "واسه", "برای", "exact"),
    ("direct", "آره", "بله", "exact"),
    # possessive pronouns
    ("possessive_pronoun", "پیداش", "پیدایش", "exact"),
    # printed «شبستان»: scanner read of «شبتان»
    ("possessive_pronoun", "شبتون", "شبتان", "adjusted"),
    ("possessive_pronoun", "لطفتون", "لطفتان", "exact"),
    # printed «اینجا»: the conversion column lost its tail («هوام : هوایم»
    # is the same pattern in the worked examples)
    ("possessive_pronoun", "اینجام", "اینجایم", "adjusted"),
    ("possessive_pronoun", "بابام", "بابایم", "exact"),
    ("possessive_pronoun", "دمتون", "دمتان", "exact"),
    ("possessive_pronoun", "بابات", "بابایت", "exact"),
    ("possessive_pronoun", "چشمات", f"چشم{ZWNJ}هایت", "exact"),
    # printed input «شیش»: a «ش» dropped from «شیشش»
    ("possessive_pronoun", "شیشش", f"شیشه{ZWNJ}اش", "adjusted"),
    ("possessive_pronoun", "صبحتون", "صبحتان", "exact"),
    # letter repetition
    ("letter_repetition", "خخخخ", "خ", "exact"),
    ("letter_repetition", "خخخ", "خ", "exact"),
    ("letter_repetition", "خخخخخ", "خ", "exact"),
    ("letter_repetition", "خخخخخخ", "خ", "exact"),
    ("letter_repetition", "خخخخخخخ", "خ", "exact"),
    ("letter_repetition", "جووون", "جون", "exact"),
    # printed «عائالی» twice: scanner read of a doubled alef; tested once
    ("letter_repetition", "عاالی", "عالی", "adjusted"),
    ("letter_repetition", "واای", "وای", "exact"),
    ("letter_repetition", "هههه", "ه", "exact"),
    # colloquial verbs (inputs printed with a space carry ZWNJ here: the
    # typesetting loses half-spaces)
    ("colloquial_verb", "میکنی", f"می{ZWNJ}کنی", "exact"),
    ("colloquial_verb", "نکنه", "نکند", "exact"),
    ("colloquial_verb", f"می{ZWNJ}کنه", f"می{ZWNJ}کند", "exact"),
    ("colloquial_verb", "میخوان", f"می{ZWNJ}خواهند", "exact"),
    ("colloquial_verb", f"می{ZWNJ}خوام", f"می{ZWNJ}خواهم", "exact"),
    ("colloquial_verb", "میزنم", f"می{ZWNJ}زنم", "exact"),
    ("colloquial_verb", "میخواستم", f"می{ZWNJ}خواستم", "exact"),
    ("colloquial_verb", "بکنه", "بکند", "exact"),
    ("colloquial_verb", "نمیده", f"نمی{ZWNJ}دهد", "exact"),
    # plurals
    ("plural", "دخترا", "دخترها", "exact"),
    ("plural", "بعضیا", "بعضی ها", "exact"),
    ("plural", "حرفای", "حرف های", "exact"),
    ("plural", "دوستای", "دوست های", "exact"),
    ("plural", "بهترینها", "بهترین ها", "exact"),
    ("plural", "چشمای", "چشم های", "exact"),
    ("plural", "مردا", "مرد ها", "exact"),
    ("plural", "دخترای", "دختر های", "exact"),
    ("plural", "خانوما", "خانوم ها", "exact"),
    ("plural", "پستای", "پست های", "exact"),
]

# The one published row no orthographic rule can reach («گ» became «ک»).
EXCLUDED: list[tuple[str, str, str]] = [
    ("colloquial_verb", "میگردم", "می کردم"),
]

# Worked possessive examples from the tool's own exposition; the seed
# lexicon carries them too, so these double as composition checks.
POSSESSIVE_EXAMPLES: list[tuple[str, str]] = [
    ("خودکاراتون", f"خودکار{ZWNJ}هایتان"),
    ("هوام", "هوایم"),
    ("قیافاش", f"قیافه{ZWNJ}اش"),
    ("همسایمون", f"همسایه{ZWNJ}مان"),
]

VALIDATOR_WORDS: set[str] = {
    # oon_to_aan outputs
    "آقایان", "اقایان", "یکیشان", "شیطان", "برگردان", "حالشان",
    "اولشان", "دمشان", "زندگیشان", "جفتشان", "شیطانم",
    # vav_to_ra stems
    "خودم", "داستان", "همین", "دهنت", "چیز", "اسمش", "مملکت",
    "اینجا", "صدام", "حالم",
    # possessive stems and composed forms
    "پیدا", "پیدایش", "شب", "شبتان", "لطف", "لطفتان", "اینجایم",
    "بابا", "بابایم", "بابایت", "دم", "دمتان", "چشم", f"چشم{ZWNJ}هایت",
    "شیشه", f"شیشه{ZWNJ}اش", "صبح", "صبحتان",
    "هوا", "هوایم", "قیافه", f"قیافه{ZWNJ}اش", "همسایه", f"همسایه{ZWNJ}مان",
    "خودکار", f"خودکار{ZWNJ}هایتان",
    # letter repetition targets
    "عالی", "وای",
    # colloquial verb targets
    f"می{ZWNJ}کنی", "نکند", f"می{ZWNJ}کند", f"می{ZWNJ}خواهند",
    f"می{ZWNJ}خواهم", f"می{ZWNJ}زنم", f"می{ZWNJ}خواستم", "بکند",
    f"نمی{ZWNJ}دهد",
    f"می{ZWNJ}دانم", f"می{ZWNJ}گویم", f"می{ZWNJ}روم", f"می{ZWNJ}توانم",
    f"می{ZWNJ}شوم",
    # plural stems
    "دختر", "بعضی", "حرف", "دوست", "بهترین", "مرد", "خانوم", "پست",
}


def canon(text: str) -> str:
    """Collapse the separator variance the printed tables carry."""
    return text.replace(ZWNJ, "").replace(" ", "")
