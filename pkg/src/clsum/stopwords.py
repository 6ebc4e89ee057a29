"""Bundled per-language word lists.

Small fixed lists only: stopwords feed term-vector construction and the
word-graph merging rules, the verb lexicons back the naive tagger, and the
abbreviation set guards sentence splitting. Surface output is never
filtered through these lists.
"""

_EN_STOPWORDS = """
a about above after again against all am an and any are as at be because
been before being below between both but by could did do does doing down
during each few for from further had has have having he her here hers
herself him himself his how i if in into is it its itself just me more
most my myself no nor not now of off on once only or other our ours
ourselves out over own same she should so some such than that the their
theirs them themselves then there these they this those through to too
under until up very was we were what when where which while who whom why
will with would you your yours yourself yourselves
""".split()

_FR_STOPWORDS = """
à au aux avec ce ces cet cette dans de des du elle elles en et eux il ils je
la le les leur leurs lui ma mais me même mes moi mon ne ni nos notre nous
on ou où par pas pour qu que qui sa se ses son sur ta te tes toi ton tu un
une vos votre vous y d l j m n s t c qu' d' l' j' n' s' t' c' alors ainsi
aussi autre autres avant bien car cela celle celles celui cependant chaque
comme comment donc dont encore enfin entre ici jusqu jusque là lors même
moins non or plus puis quand sans selon seulement si sinon sous tandis
tant tel telle tels telles toujours tous tout toute toutes très trop vers
chez
""".split()

STOPWORDS = {
    "en": frozenset(_EN_STOPWORDS),
    "fr": frozenset(_FR_STOPWORDS),
}

# Closed-class verb forms plus frequent irregulars; the suffix heuristics in
# the tagger catch regular -ed/-ing forms.
_EN_VERBS = """
am is are was were be been being has have had having do does did done
will would shall should can could may might must say says said make makes
made go goes went gone get gets got take takes took taken see sees saw
seen come comes came know knows knew known give gives gave given find
finds found tell tells told become becomes became show shows showed shown
leave leaves left feel feels felt put puts set sets let lets keep keeps
kept begin begins began begun write writes wrote written stand stands
stood hear hears heard run runs ran sit sits sat pay pays paid meet meets
met send sends sent build builds built fall falls fell grow grows grew
lose loses lost win wins won hold holds held bring brings brought think
thinks thought lead leads led read reads rose rise rises
""".split()

_FR_VERBS = """
suis es est sommes êtes sont étais était étions étiez étaient fus fut
furent serai seras sera serons serez seront serais serait être été étant
ai as a avons avez ont avais avait avions aviez avaient eus eut eurent
aurai auras aura aurons aurez auront aurais aurait avoir eu ayant fais
fait faisons faites font faisais faisait faisaient fis fit firent ferai
fera feront ferait faire vais vas va allons allez vont allais allait
allaient alla ira iront irait aller allé peux peut pouvons pouvez peuvent
pouvait pouvaient put pourra pourront pourrait pouvoir pu dois doit
devons devez doivent devait devaient dut devra devront devrait devoir dû
dis dit disons dites disent disait disaient dirent dira diront dirait
dire prends prend prenons prenez prennent prenait prirent prit prendre
pris viens vient venons venez viennent venait vint viendra venir venu
veux veut voulons voulez veulent voulait voulut voudra voudrait vouloir
voulu sais sait savons savez savent savait surent sut saura saurait
savoir su
""".split()

VERB_LEXICON = {
    "en": frozenset(_EN_VERBS),
    "fr": frozenset(_FR_VERBS),
}

# Lowercased tokens (with trailing period) that never end a sentence.
ABBREVIATIONS = frozenset(
    """
    dr. mr. mrs. ms. prof. sr. jr. st. no. nos. fig. figs. vol. etc. e.g.
    i.e. vs. cf. al. approx. dept. est. inc. ltd. co. corp. jan. feb.
    mar. apr. jun. jul. aug. sep. sept. oct. nov. dec. mon. tue. wed.
    thu. fri. sat. sun. m. mme. mlle. av. bd. éd. p. pp. ex. env.
    """.split()
)


def stopwords_for(lang: str) -> frozenset:
    """Return the stopword set for *lang*, falling back to English."""
    return STOPWORDS.get(lang, STOPWORDS["en"])


def verbs_for(lang: str) -> frozenset:
    return VERB_LEXICON.get(lang, VERB_LEXICON["en"])
