#!/usr/bin/env python3
"""Generates the bundled fixture corpora under data/fixtures/.

The corpora are synthetic news-like documents sampled from hand-curated
per-language word lists (Albanian, English, German) with frequency weights,
so that they are freely redistributable while showing realistic character
n-gram statistics, including the Albanian letters Ë and Ç. The output is
committed to the repository; rerunning this script reproduces it bit for bit.

Usage: python3 tools/gen_fixtures.py [output-dir]
"""

import json
import random
import sys
from pathlib import Path

DOMAINS = ["politics", "sports", "economy", "culture", "health", "technology"]

SQ_GENERAL = [
    ("të", 100), ("e", 90), ("dhe", 85), ("në", 80), ("që", 65), ("një", 60),
    ("për", 55), ("është", 55), ("me", 50), ("nga", 40), ("më", 38), ("i", 70),
    ("si", 30), ("ka", 30), ("do", 26), ("se", 25), ("së", 25), ("nuk", 24),
    ("janë", 22), ("edhe", 20), ("u", 18), ("por", 16), ("shumë", 14), ("kjo", 12),
    ("këtë", 12), ("ky", 10), ("çdo", 11), ("kur", 11), ("sot", 9), ("ajo", 9),
    ("ai", 9), ("sipas", 9), ("pas", 9), ("vetëm", 8), ("gjatë", 8), ("mbi", 7),
    ("ose", 7), ("ku", 7), ("sa", 7), ("deri", 6), ("rreth", 6), ("pa", 6),
    ("ndërsa", 6), ("kësaj", 6), ("këto", 6), ("ata", 6), ("ne", 6), ("prej", 5),
    ("sepse", 5), ("pak", 5), ("tani", 5), ("dje", 5), ("ato", 5), ("tek", 4),
    ("ju", 3), ("nesër", 3), ("pastaj", 3), ("gjithashtu", 4), ("megjithatë", 3),
    ("ndoshta", 2), ("sigurisht", 2), ("gjithmonë", 3), ("shpesh", 3), ("rrallë", 2),
    ("tha", 12), ("thotë", 10), ("bëri", 7), ("bën", 6), ("mori", 6), ("merr", 5),
    ("dha", 5), ("jep", 4), ("vjen", 5), ("erdhi", 4), ("shkon", 4), ("shkoi", 4),
    ("punon", 5), ("punoi", 3), ("fillon", 4), ("filloi", 5), ("mbaroi", 3),
    ("vazhdon", 4), ("vazhdoi", 3), ("pritet", 4), ("duket", 3), ("mbetet", 4),
    ("ndodhet", 3), ("gjendet", 3), ("quhet", 3), ("deklaroi", 4), ("njoftoi", 4),
    ("shpalli", 3), ("vendosi", 4), ("miratoi", 3), ("kërkoi", 4), ("kërkon", 4),
    ("përdor", 3), ("krijoi", 3), ("krijon", 3), ("ndryshoi", 2), ("ndryshon", 3),
    ("rritet", 4), ("zhvillohet", 3), ("organizohet", 3), ("publikohet", 2),
    ("fitoi", 4), ("fiton", 3), ("humbi", 3), ("luajti", 3), ("luan", 3),
    ("shkroi", 2), ("shkruan", 3), ("lexon", 2), ("foli", 3), ("flet", 3),
    ("mësoi", 2), ("mëson", 2), ("sheh", 3), ("pret", 2), ("priti", 2),
    ("gjeti", 3), ("gjen", 2), ("beson", 2), ("mendon", 3), ("mendoi", 2),
    ("ndihmoi", 2), ("ndihmon", 2), ("pagoi", 2), ("paguan", 2), ("bleu", 2),
    ("blen", 2), ("shiti", 2), ("shet", 2), ("hapi", 3), ("hap", 2),
    ("mbylli", 2), ("mbyll", 2),
    ("qeveria", 6), ("vendi", 6), ("viti", 6), ("dita", 5), ("puna", 5),
    ("koha", 4), ("bota", 4), ("njerëzit", 5), ("fëmijët", 3), ("gruaja", 2),
    ("burri", 2), ("familja", 3), ("shtëpia", 3), ("rruga", 3), ("qyteti", 5),
    ("fshati", 2), ("shkolla", 4), ("universiteti", 3), ("studentët", 3),
    ("mësuesi", 2), ("libri", 3), ("gjuha", 3), ("fjala", 3), ("nata", 3),
    ("muaji", 3), ("java", 3), ("ora", 3), ("makina", 2), ("treni", 2),
    ("deti", 2), ("mali", 2), ("lumi", 2), ("qielli", 2), ("dielli", 2),
    ("moti", 3), ("shiu", 2), ("bora", 2), ("era", 2), ("pema", 2),
    ("lulja", 2), ("kafsha", 2), ("qeni", 2), ("macja", 2), ("zogu", 2),
    ("peshku", 2), ("buka", 2), ("uji", 3), ("vera", 2), ("kafeja", 2),
    ("çaji", 2), ("mishi", 2), ("djathi", 2), ("qumështi", 2), ("vezët", 2),
    ("molla", 2), ("rrushi", 2), ("darka", 2), ("dreka", 2), ("mëngjesi", 2),
    ("punëtorët", 2), ("popullsia", 2), ("shteti", 4), ("bashkia", 3),
    ("kryeqyteti", 2), ("zona", 2), ("rajoni", 2), ("vendimi", 3), ("takimi", 3),
    ("mbledhja", 2), ("projekti", 3), ("programi", 3), ("raporti", 3),
    ("rezultati", 3), ("problemi", 3), ("zgjidhja", 2), ("mundësia", 2),
    ("rëndësia", 2), ("pjesa", 3), ("numri", 3), ("grupi", 3), ("anëtarët", 2),
    ("drejtori", 2), ("kryetari", 3), ("policia", 3), ("gjykata", 3),
    ("madh", 4), ("madhe", 4), ("vogël", 3), ("mirë", 6), ("keq", 3),
    ("bukur", 3), ("ri", 4), ("re", 4), ("vjetër", 2), ("lartë", 3),
    ("fortë", 2), ("plotë", 2), ("hapur", 2), ("mbyllur", 2), ("fundit", 5),
    ("parë", 5), ("dytë", 3), ("tretë", 2), ("kombëtare", 3),
    ("ndërkombëtare", 2), ("publike", 3), ("private", 2), ("zyrtare", 2),
    ("politike", 3), ("ekonomike", 3), ("kulturore", 2), ("shëndetësore", 2),
    ("teknologjike", 2), ("rëndësishme", 3), ("veçantë", 2), ("ndryshme", 2),
    ("sotme", 2), ("ardhshme", 2), ("kaluar", 3),
]

SQ_DOMAIN = {
    "politics": ["qeveria", "kryeministri", "presidenti", "parlamenti", "zgjedhjet",
                 "partia", "opozita", "deputetët", "ligji", "reforma", "votat",
                 "kandidati", "koalicioni", "mandati", "kushtetuta", "komisioni",
                 "debati", "seanca", "vendimi", "ministri"],
    "sports": ["futbolli", "basketbolli", "ndeshja", "skuadra", "lojtari", "trajneri",
               "goli", "fitorja", "humbja", "barazimi", "kampionati", "stadiumi",
               "tifozët", "sezoni", "portieri", "sulmuesi", "mbrojtja", "ekipi",
               "turneu", "finalja"],
    "economy": ["ekonomia", "tregu", "çmimi", "çmimet", "paraja", "banka", "rroga",
                "taksat", "biznesi", "kompania", "fabrika", "prodhimi", "eksporti",
                "importi", "investimi", "buxheti", "borxhi", "inflacioni",
                "punësimi", "tregtia"],
    "culture": ["kultura", "muzika", "kënga", "këngëtarja", "filmi", "teatri",
                "piktura", "arti", "festivali", "koncerti", "shkrimtari", "poeti",
                "aktori", "regjisori", "ekspozita", "muzeu", "trashëgimia",
                "vallëzimi", "skena", "premiera"],
    "health": ["shëndeti", "mjeku", "spitali", "ilaçi", "sëmundja", "pacienti",
               "infermierja", "operacioni", "vaksina", "trajtimi", "diagnoza",
               "klinika", "terapia", "virusi", "gripi", "zemra", "gjaku",
               "analizat", "shërimi", "parandalimi"],
    "technology": ["teknologjia", "interneti", "kompjuteri", "telefoni",
                   "aplikacioni", "rrjeti", "faqja", "sistemi", "softueri",
                   "pajisja", "ekrani", "bateria", "inovacioni", "shkenca",
                   "roboti", "platforma", "përdoruesit", "siguria", "informacioni",
                   "programuesi"],
}

EN_GENERAL = [
    ("the", 120), ("of", 70), ("and", 65), ("to", 60), ("a", 55), ("in", 50),
    ("is", 40), ("was", 30), ("for", 28), ("it", 25), ("with", 24), ("as", 22),
    ("on", 22), ("be", 18), ("at", 18), ("by", 18), ("this", 16), ("are", 16),
    ("had", 14), ("not", 14), ("but", 14), ("from", 14), ("have", 12), ("said", 12),
    ("or", 10), ("an", 10), ("they", 10), ("were", 10), ("all", 10), ("has", 10),
    ("which", 8), ("one", 8), ("there", 8), ("their", 8), ("will", 8), ("more", 8),
    ("new", 8), ("would", 7), ("when", 7), ("we", 6), ("been", 6), ("who", 6),
    ("if", 6), ("so", 6), ("its", 6), ("about", 6), ("people", 6), ("also", 6),
    ("you", 6), ("out", 5), ("no", 5), ("can", 5), ("other", 5), ("some", 5),
    ("time", 5), ("first", 5), ("after", 5), ("day", 5), ("last", 5), ("year", 5),
    ("than", 4), ("into", 4), ("them", 4), ("only", 4), ("could", 4), ("these", 4),
    ("two", 4), ("may", 4), ("then", 4), ("do", 4), ("now", 4), ("over", 4),
    ("many", 4), ("years", 4), ("work", 4), ("city", 4), ("up", 4), ("what", 4),
    ("such", 3), ("like", 3), ("our", 3), ("did", 3), ("before", 3), ("through", 3),
    ("where", 3), ("much", 3), ("way", 3), ("well", 3), ("should", 3), ("because", 3),
    ("just", 3), ("those", 3), ("state", 3), ("good", 3), ("very", 3), ("make", 3),
    ("world", 3), ("long", 3), ("here", 3), ("between", 3), ("life", 3), ("under", 3),
    ("night", 3), ("while", 3), ("against", 3), ("market", 3), ("during", 3),
    ("week", 3), ("month", 3), ("still", 2), ("own", 2), ("see", 2), ("men", 2),
    ("get", 2), ("both", 2), ("being", 2), ("never", 2), ("same", 2), ("another", 2),
    ("know", 2), ("might", 2), ("great", 2), ("old", 2), ("off", 2), ("since", 2),
    ("three", 2), ("came", 2), ("right", 2), ("used", 2), ("take", 2), ("each", 2),
    ("too", 2), ("little", 2), ("how", 2), ("down", 2), ("your", 2), ("must", 2),
    ("him", 3), ("her", 4), ("she", 4), ("he", 12), ("his", 10), ("me", 8),
    ("per", 3), ("cent", 2), ("opened", 2),
    ("early", 2), ("late", 2), ("high", 3), ("low", 2), ("began", 2), ("ended", 2),
    ("called", 3), ("announced", 3), ("reported", 3), ("expected", 3), ("decided", 2),
    ("started", 2), ("continued", 2), ("remained", 2), ("became", 2), ("found", 2),
    ("showed", 2), ("told", 2), ("asked", 2), ("gave", 2), ("took", 2), ("came", 0),
]

EN_DOMAIN = {
    "politics": ["government", "minister", "president", "parliament", "election",
                 "party", "opposition", "lawmakers", "law", "reform", "votes",
                 "candidate", "coalition", "mandate", "constitution", "committee",
                 "debate", "session", "decision", "policy"],
    "sports": ["football", "basketball", "match", "team", "player", "coach", "goal",
               "victory", "defeat", "draw", "championship", "stadium", "fans",
               "season", "keeper", "striker", "defence", "squad", "tournament",
               "final"],
    "economy": ["economy", "trade", "price", "prices", "money", "bank", "wages",
                "taxes", "business", "company", "factory", "production", "exports",
                "imports", "investment", "budget", "debt", "inflation", "jobs",
                "growth"],
    "culture": ["culture", "music", "song", "singer", "film", "theatre", "painting",
                "art", "festival", "concert", "writer", "poet", "actor", "director",
                "exhibition", "museum", "heritage", "dance", "stage", "premiere"],
    "health": ["health", "doctor", "hospital", "medicine", "disease", "patient",
               "nurse", "surgery", "vaccine", "treatment", "diagnosis", "clinic",
               "therapy", "virus", "flu", "heart", "blood", "tests", "recovery",
               "prevention"],
    "technology": ["technology", "internet", "computer", "phone", "application",
                   "network", "website", "system", "software", "device", "screen",
                   "battery", "innovation", "science", "robot", "platform", "users",
                   "security", "data", "developer"],
}

DE_GENERAL = [
    ("die", 100), ("der", 90), ("und", 80), ("das", 60), ("in", 55), ("den", 40),
    ("von", 40), ("zu", 38), ("mit", 35), ("für", 30), ("auf", 30), ("ist", 30),
    ("ein", 30), ("eine", 28), ("im", 28), ("sich", 25), ("des", 25), ("dem", 22),
    ("nicht", 22), ("als", 20), ("auch", 20), ("es", 20), ("an", 18), ("sie", 18),
    ("aus", 16), ("hat", 16), ("dass", 16), ("er", 14), ("nach", 14), ("wird", 14),
    ("werden", 14), ("am", 14), ("bei", 12), ("um", 12), ("sind", 12), ("einer", 10),
    ("noch", 10), ("wie", 10), ("über", 10), ("einen", 10), ("war", 10), ("wurde", 8),
    ("einem", 8), ("so", 8), ("zum", 8), ("haben", 8), ("aber", 8), ("vor", 8),
    ("nur", 7), ("oder", 7), ("mehr", 7), ("zur", 6), ("bis", 6), ("durch", 6),
    ("gegen", 6), ("man", 5), ("sein", 5), ("seine", 5), ("kann", 5), ("wenn", 5),
    ("vom", 4), ("schon", 4), ("ihre", 4), ("dann", 4), ("unter", 4), ("wir", 4),
    ("soll", 4), ("ich", 3), ("habe", 3), ("jahr", 5), ("jahre", 4), ("heute", 5),
    ("neue", 5), ("neuen", 4), ("stadt", 4), ("land", 4), ("menschen", 5),
    ("arbeit", 4), ("zeit", 4), ("welt", 3), ("tag", 4), ("nacht", 3), ("woche", 3),
    ("monat", 3), ("leben", 3), ("kinder", 3), ("familie", 3), ("schule", 3),
    ("haus", 3), ("straße", 3), ("wasser", 2), ("ende", 3), ("anfang", 2),
    ("seit", 4), ("immer", 4), ("wieder", 4), ("viele", 4), ("beiden", 2),
    ("ersten", 4), ("zweiten", 2), ("letzten", 4), ("großen", 3), ("kleinen", 2),
    ("deutschen", 3), ("neben", 2), ("zwischen", 3), ("während", 3), ("sagte", 8),
    ("erklärte", 4), ("berichtete", 3), ("kündigte", 2), ("begann", 3),
    ("endete", 2), ("blieb", 2), ("kam", 3), ("ging", 3), ("steht", 3),
    ("stand", 2), ("liegt", 3), ("lag", 2), ("gibt", 4), ("gab", 3), ("macht", 3),
    ("machte", 2), ("zeigt", 3), ("zeigte", 2), ("bleibt", 3), ("sollen", 3),
    ("können", 4), ("müssen", 3), ("dürfen", 2), ("wollen", 3), ("wurden", 4),
    ("worden", 3), ("diese", 6), ("dieser", 5), ("dieses", 3), ("diesem", 3),
    ("einige", 3), ("keine", 3), ("jeden", 2), ("jedes", 2), ("etwa", 3),
    ("rund", 3), ("fast", 3), ("sehr", 4), ("gut", 3), ("hoch", 2), ("lange", 3),
]

DE_DOMAIN = {
    "politics": ["regierung", "minister", "präsident", "parlament", "wahl",
                 "partei", "opposition", "abgeordnete", "gesetz", "reform",
                 "stimmen", "kandidat", "koalition", "mandat", "verfassung",
                 "ausschuss", "debatte", "sitzung", "beschluss", "politik"],
    "sports": ["fußball", "basketball", "spiel", "mannschaft", "spieler", "trainer",
               "tor", "sieg", "niederlage", "unentschieden", "meisterschaft",
               "stadion", "fans", "saison", "torwart", "stürmer", "abwehr",
               "kader", "turnier", "finale"],
    "economy": ["wirtschaft", "handel", "preis", "preise", "geld", "bank", "löhne",
                "steuern", "geschäft", "unternehmen", "fabrik", "produktion",
                "ausfuhr", "einfuhr", "investition", "haushalt", "schulden",
                "inflation", "arbeitsplätze", "wachstum"],
    "culture": ["kultur", "musik", "lied", "sängerin", "film", "theater",
                "malerei", "kunst", "festival", "konzert", "schriftsteller",
                "dichter", "schauspieler", "regisseur", "ausstellung", "museum",
                "erbe", "tanz", "bühne", "premiere"],
    "health": ["gesundheit", "arzt", "krankenhaus", "medizin", "krankheit",
               "patient", "schwester", "operation", "impfstoff", "behandlung",
               "diagnose", "klinik", "therapie", "virus", "grippe", "herz",
               "blut", "tests", "genesung", "vorsorge"],
    "technology": ["technologie", "internet", "computer", "telefon", "anwendung",
                   "netzwerk", "webseite", "system", "software", "gerät",
                   "bildschirm", "batterie", "innovation", "wissenschaft",
                   "roboter", "plattform", "nutzer", "sicherheit", "daten",
                   "entwickler"],
}

LANGUAGES = {
    "sq": (SQ_GENERAL, SQ_DOMAIN),
    "en": (EN_GENERAL, EN_DOMAIN),
    "de": (DE_GENERAL, DE_DOMAIN),
}

SOURCES = ["fixture-daily", "fixture-post", "fixture-journal"]

DOCS_PER_LANGUAGE = 450
FOLDER_DOCS_PER_DOMAIN = 8
FOLDER_DOMAINS = ["politics", "sports", "economy"]


class Sampler:
    """Weighted word sampler mixing a general pool with one domain pool."""

    def __init__(self, rng, general, domain_words, domain_share=0.30):
        self.rng = rng
        self.words = [w for w, c in general if c > 0]
        self.weights = [c for _, c in general if c > 0]
        self.domain_words = domain_words
        self.domain_share = domain_share
        for w in self.words:
            assert " " not in w, w

    def word(self, domain_share=None):
        share = self.domain_share if domain_share is None else domain_share
        if self.rng.random() < share:
            return self.rng.choice(self.domain_words)
        return self.rng.choices(self.words, self.weights)[0]

    def sentence(self):
        length = self.rng.randint(6, 14)
        tokens = []
        for i in range(length):
            w = self.word()
            if self.rng.random() < 0.02:
                w = str(self.rng.randint(2, 2026))
            if 0 < i < length - 1 and self.rng.random() < 0.08:
                w += ","
            tokens.append(w)
        text = " ".join(tokens)
        text = text[0].upper() + text[1:]
        roll = self.rng.random()
        return text + ("?" if roll < 0.05 else "!" if roll < 0.08 else ".")

    def title(self):
        # Titles are short and lean on common words, which is where diacritic
        # loss hurts identification the most.
        while True:
            length = self.rng.randint(3, 6)
            words = [self.word(domain_share=0.12) for _ in range(length)]
            text = " ".join(words)
            text = text[0].upper() + text[1:]
            if len(text) <= 80:
                return text

    def content(self):
        # A fifth of the articles stay short (under ~500 bytes) so that
        # excerpting has something to exclude.
        n_words = (self.rng.randint(45, 70) if self.rng.random() < 0.20
                   else self.rng.randint(75, 230))
        sentences = []
        used = 0
        while used < n_words:
            s = self.sentence()
            used += len(s.split())
            sentences.append(s)
        return " ".join(sentences)


def generate_articles(out_path: Path):
    rng = random.Random(20240401)
    records = []
    for lang in sorted(LANGUAGES):
        general, domain_pools = LANGUAGES[lang]
        for i in range(DOCS_PER_LANGUAGE):
            domain = DOMAINS[i % len(DOMAINS)]
            sampler = Sampler(rng, general, domain_pools[domain])
            records.append({
                "id": f"{lang}-{domain}-{i:04d}",
                "language": lang,
                "title": sampler.title(),
                "content": sampler.content(),
                "domain": domain,
                "source": SOURCES[i % len(SOURCES)],
            })
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with out_path.open("w", encoding="utf-8", newline="\n") as f:
        for record in records:
            f.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")
    return len(records)


def generate_folder(root: Path):
    rng = random.Random(20240402)
    count = 0
    for lang in sorted(LANGUAGES):
        general, domain_pools = LANGUAGES[lang]
        for domain in FOLDER_DOMAINS:
            for i in range(FOLDER_DOCS_PER_DOMAIN):
                sampler = Sampler(rng, general, domain_pools[domain])
                path = root / lang / domain / f"{lang}-{domain}-{i:03d}.txt"
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_text(sampler.content() + "\n", encoding="utf-8", newline="\n")
                count += 1
    return count


def main():
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("data/fixtures")
    n_articles = generate_articles(out_dir / "articles.jsonl")
    n_files = generate_folder(out_dir / "folder")
    print(f"wrote {n_articles} article records and {n_files} folder documents to {out_dir}")


if __name__ == "__main__":
    main()
