"""Deterministic toy generator of parallel German/English/French sentences.

Used to build benches and helper-model training data when no real corpora are
at hand. Sentences follow a small clause grammar (subject, verb, object,
optional prepositional phrase, time adverbial, subordinate ``because``
clause) with correct enough articles, adjective endings, elision and German
verb placement that character statistics look like the real languages.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

LANGS = ("de", "en", "fr")

# en, de, de gender, fr, fr gender
NOUNS = [
    ("dog", "Hund", "m", "chien", "m"), ("cat", "Katze", "f", "chat", "m"),
    ("house", "Haus", "n", "maison", "f"), ("city", "Stadt", "f", "ville", "f"),
    ("government", "Regierung", "f", "gouvernement", "m"), ("minister", "Minister", "m", "ministre", "m"),
    ("company", "Unternehmen", "n", "entreprise", "f"), ("market", "Markt", "m", "marché", "m"),
    ("child", "Kind", "n", "enfant", "m"), ("teacher", "Lehrer", "m", "professeur", "m"),
    ("school", "Schule", "f", "école", "f"), ("car", "Auto", "n", "voiture", "f"),
    ("train", "Zug", "m", "train", "m"), ("river", "Fluss", "m", "rivière", "f"),
    ("mountain", "Berg", "m", "montagne", "f"), ("book", "Buch", "n", "livre", "m"),
    ("letter", "Brief", "m", "lettre", "f"), ("report", "Bericht", "m", "rapport", "m"),
    ("president", "Präsident", "m", "président", "m"), ("bank", "Bank", "f", "banque", "f"),
    ("doctor", "Arzt", "m", "médecin", "m"), ("hospital", "Krankenhaus", "n", "hôpital", "m"),
    ("police", "Polizei", "f", "police", "f"), ("court", "Gericht", "n", "tribunal", "m"),
    ("law", "Gesetz", "n", "loi", "f"), ("team", "Mannschaft", "f", "équipe", "f"),
    ("player", "Spieler", "m", "joueur", "m"), ("game", "Spiel", "n", "match", "m"),
    ("price", "Preis", "m", "prix", "m"), ("country", "Land", "n", "pays", "m"),
    ("village", "Dorf", "n", "village", "m"), ("street", "Straße", "f", "rue", "f"),
    ("window", "Fenster", "n", "fenêtre", "f"), ("door", "Tür", "f", "porte", "f"),
    ("table", "Tisch", "m", "table", "f"), ("garden", "Garten", "m", "jardin", "m"),
    ("tree", "Baum", "m", "arbre", "m"), ("flower", "Blume", "f", "fleur", "f"),
    ("bird", "Vogel", "m", "oiseau", "m"), ("horse", "Pferd", "n", "cheval", "m"),
    ("farmer", "Bauer", "m", "fermier", "m"), ("student", "Student", "m", "étudiant", "m"),
    ("university", "Universität", "f", "université", "f"), ("newspaper", "Zeitung", "f", "journal", "m"),
    ("question", "Frage", "f", "question", "f"), ("answer", "Antwort", "f", "réponse", "f"),
    ("plan", "Plan", "m", "projet", "m"), ("decision", "Entscheidung", "f", "décision", "f"),
    ("election", "Wahl", "f", "élection", "f"), ("party", "Partei", "f", "parti", "m"),
    ("army", "Armee", "f", "armée", "f"), ("woman", "Frau", "f", "femme", "f"),
    ("man", "Mann", "m", "homme", "m"), ("friend", "Freund", "m", "ami", "m"),
    ("family", "Familie", "f", "famille", "f"), ("money", "Geld", "n", "argent", "m"),
    ("computer", "Computer", "m", "ordinateur", "m"), ("phone", "Telefon", "n", "téléphone", "m"),
    ("film", "Film", "m", "film", "m"), ("song", "Lied", "n", "chanson", "f"),
    ("museum", "Museum", "n", "musée", "m"), ("church", "Kirche", "f", "église", "f"),
    ("island", "Insel", "f", "île", "f"), ("ship", "Schiff", "n", "navire", "m"),
    ("king", "König", "m", "roi", "m"), ("queen", "Königin", "f", "reine", "f"),
    ("judge", "Richter", "m", "juge", "m"), ("worker", "Arbeiter", "m", "ouvrier", "m"),
    ("factory", "Fabrik", "f", "usine", "f"), ("scientist", "Wissenschaftler", "m", "chercheur", "m"),
    ("study", "Studie", "f", "étude", "f"), ("water", "Wasser", "n", "eau", "f"),
    ("bridge", "Brücke", "f", "pont", "m"), ("kitchen", "Küche", "f", "cuisine", "f"),
    ("office", "Büro", "n", "bureau", "m"), ("neighbour", "Nachbar", "m", "voisin", "m"),
    ("engine", "Motor", "m", "moteur", "m"), ("picture", "Bild", "n", "tableau", "m"),
]

# en, de stem, fr masculine, fr feminine, fr goes before the noun
ADJECTIVES = [
    ("big", "groß", "grand", "grande", True), ("small", "klein", "petit", "petite", True),
    ("new", "neu", "nouveau", "nouvelle", True), ("old", "alt", "vieux", "vieille", True),
    ("good", "gut", "bon", "bonne", True), ("young", "jung", "jeune", "jeune", True),
    ("beautiful", "schön", "beau", "belle", True), ("strong", "stark", "fort", "forte", False),
    ("important", "wichtig", "important", "importante", False), ("red", "rot", "rouge", "rouge", False),
    ("black", "schwarz", "noir", "noire", False), ("white", "weiß", "blanc", "blanche", False),
    ("long", "lang", "long", "longue", False), ("rich", "reich", "riche", "riche", False),
    ("poor", "arm", "pauvre", "pauvre", False), ("famous", "berühmt", "célèbre", "célèbre", False),
    ("quiet", "ruhig", "calme", "calme", False), ("dangerous", "gefährlich", "dangereux", "dangereuse", False),
    ("modern", "modern", "moderne", "moderne", False), ("local", "lokal", "local", "locale", False),
    ("public", "öffentlich", "public", "publique", False), ("foreign", "ausländisch", "étranger", "étrangère", False),
    ("green", "grün", "vert", "verte", False), ("expensive", "teuer", "cher", "chère", False),
    ("happy", "glücklich", "heureux", "heureuse", False), ("tired", "müde", "fatigué", "fatiguée", False),
]

# en 3sg, de 3sg, fr 3sg
VERBS = [
    ("sees", "sieht", "voit"), ("likes", "mag", "aime"), ("buys", "kauft", "achète"),
    ("sells", "verkauft", "vend"), ("finds", "findet", "trouve"), ("visits", "besucht", "visite"),
    ("builds", "baut", "construit"), ("opens", "öffnet", "ouvre"), ("closes", "schließt", "ferme"),
    ("supports", "unterstützt", "soutient"), ("criticizes", "kritisiert", "critique"),
    ("watches", "beobachtet", "regarde"), ("describes", "beschreibt", "décrit"),
    ("wins", "gewinnt", "gagne"), ("loses", "verliert", "perd"), ("writes", "schreibt", "écrit"),
    ("reads", "liest", "lit"), ("carries", "trägt", "porte"), ("protects", "schützt", "protège"),
    ("changes", "ändert", "change"), ("reaches", "erreicht", "atteint"), ("leads", "führt", "dirige"),
    ("controls", "kontrolliert", "contrôle"), ("paints", "malt", "peint"), ("explains", "erklärt", "explique"),
    ("discovers", "entdeckt", "découvre"), ("accepts", "akzeptiert", "accepte"), ("loves", "liebt", "adore"),
    ("cleans", "putzt", "nettoie"), ("repairs", "repariert", "répare"), ("meets", "trifft", "rencontre"),
    ("asks", "fragt", "interroge"), ("orders", "bestellt", "commande"), ("receives", "erhält", "reçoit"),
    ("sends", "schickt", "envoie"), ("needs", "braucht", "demande"), ("forgets", "vergisst", "oublie"),
]

# en, de, fr; German case governed by the preposition
PREPOSITIONS = [
    ("with", "mit", "avec", "dat"), ("in", "in", "dans", "dat"), ("behind", "hinter", "derrière", "dat"),
    ("under", "unter", "sous", "dat"), ("without", "ohne", "sans", "acc"), ("for", "für", "pour", "acc"),
    ("against", "gegen", "contre", "acc"), ("through", "durch", "à travers", "acc"),
]

ADVERBIALS = [
    ("today", "heute", "aujourd'hui"), ("now", "jetzt", "maintenant"), ("often", "oft", "souvent"),
    ("again", "wieder", "encore"), ("finally", "endlich", "enfin"), ("sometimes", "manchmal", "parfois"),
    ("in the morning", "am Morgen", "le matin"), ("every day", "jeden Tag", "chaque jour"),
    ("in winter", "im Winter", "en hiver"), ("in summer", "im Sommer", "en été"),
    ("at night", "in der Nacht", "la nuit"), ("usually", "normalerweise", "habituellement"),
    ("tomorrow", "morgen", "demain"), ("suddenly", "plötzlich", "soudain"),
]

# English paraphrases picked with probability SYNONYM_RATE, so clean pairs
# are not all word-for-word deterministic
EN_SYNONYMS = {
    "big": "large", "small": "little", "beautiful": "pretty", "quiet": "calm", "famous": "well-known",
    "happy": "glad", "sees": "notices", "likes": "enjoys", "buys": "purchases", "finds": "locates",
    "builds": "constructs", "criticizes": "attacks", "watches": "observes", "needs": "requires",
    "often": "frequently", "finally": "eventually", "suddenly": "abruptly", "usually": "normally",
    "car": "automobile", "doctor": "physician", "film": "movie", "company": "firm", "study": "survey",
}
SYNONYM_RATE = 0.3

_DE_ARTICLE = {
    "nom": {"m": "der", "f": "die", "n": "das"},
    "acc": {"m": "den", "f": "die", "n": "das"},
    "dat": {"m": "dem", "f": "der", "n": "dem"},
}
_DE_WEAK_E = {("nom", "m"), ("nom", "f"), ("nom", "n"), ("acc", "f"), ("acc", "n")}
_VOWELS = set("aeiouéèêëàâîïôûhAEIOUÉH")


@dataclass(frozen=True)
class _NounPhrase:
    noun: tuple
    adj: tuple | None

    def en(self) -> str:
        return "the " + (self.adj[0] + " " if self.adj else "") + self.noun[0]

    def de(self, case: str) -> str:
        gender = self.noun[2]
        art = _DE_ARTICLE[case][gender]
        if not self.adj:
            return f"{art} {self.noun[1]}"
        stem = self.adj[1]
        ending = "e" if (case, gender) in _DE_WEAK_E else "en"
        if stem.endswith("e"):
            ending = ending[1:]
        return f"{art} {stem}{ending} {self.noun[1]}"

    def fr(self) -> str:
        noun, gender = self.noun[3], self.noun[4]
        adj = None
        if self.adj:
            adj = self.adj[2] if gender == "m" else self.adj[3]
        if self.adj and self.adj[4]:
            words = [adj, noun]
        else:
            words = [noun] + ([adj] if adj else [])
        if words[0][0] in _VOWELS:
            return "l'" + " ".join(words)
        return ("le " if gender == "m" else "la ") + " ".join(words)


def _de_prep(prep, np_: _NounPhrase) -> str:
    phrase = np_.de(prep[3])
    # in + dem contracts to im
    if prep[1] == "in" and phrase.startswith("dem "):
        return "im " + phrase[4:]
    return f"{prep[1]} {phrase}"


def _fr_prep(prep, np_: _NounPhrase) -> str:
    return f"{prep[2]} {np_.fr()}"


class SentenceGenerator:
    """Seeded generator of aligned sentence triples keyed by language code."""

    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)

    def _np(self) -> _NounPhrase:
        rng = self.rng
        adj = rng.choice(ADJECTIVES) if rng.random() < 0.45 else None
        return _NounPhrase(rng.choice(NOUNS), adj)

    def _clause(self):
        rng = self.rng
        subj, obj = self._np(), self._np()
        verb = rng.choice(VERBS)
        pp = None
        if rng.random() < 0.4:
            pp = (rng.choice(PREPOSITIONS), self._np())
        return subj, verb, obj, pp

    def triple(self) -> dict[str, str]:
        rng = self.rng
        subj, verb, obj, pp = self._clause()
        adv = rng.choice(ADVERBIALS) if rng.random() < 0.5 else None
        fronted = adv is not None and rng.random() < 0.5

        en_pp = f" {pp[0][0]} {pp[1].en()}" if pp else ""
        de_pp = f" {_de_prep(pp[0], pp[1])}" if pp else ""
        fr_pp = f" {_fr_prep(pp[0], pp[1])}" if pp else ""

        if fronted:
            en = f"{adv[0]} {subj.en()} {verb[0]} {obj.en()}{en_pp}"
            de = f"{adv[1]} {verb[1]} {subj.de('nom')} {obj.de('acc')}{de_pp}"
            fr = f"{adv[2]} {subj.fr()} {verb[2]} {obj.fr()}{fr_pp}"
        else:
            tail_en = f" {adv[0]}" if adv else ""
            tail_fr = f" {adv[2]}" if adv else ""
            mid_de = f" {adv[1]}" if adv else ""
            en = f"{subj.en()} {verb[0]} {obj.en()}{en_pp}{tail_en}"
            de = f"{subj.de('nom')} {verb[1]}{mid_de} {obj.de('acc')}{de_pp}"
            fr = f"{subj.fr()} {verb[2]} {obj.fr()}{fr_pp}{tail_fr}"

        if rng.random() < 0.3:
            s2, v2, o2, _ = self._clause()
            en += f" because {s2.en()} {v2[0]} {o2.en()}"
            de += f" , weil {s2.de('nom')} {o2.de('acc')} {v2[1]}"
            fr += f" parce que {s2.fr()} {v2[2]} {o2.fr()}"

        en = " ".join(
            EN_SYNONYMS[w] if w in EN_SYNONYMS and rng.random() < SYNONYM_RATE else w for w in en.split()
        )
        out = {}
        for lang, text in (("en", en), ("de", de), ("fr", fr)):
            out[lang] = text[0].upper() + text[1:] + " ."
        return out

    def sentences(self, lang: str, n: int) -> list[str]:
        return [self.triple()[lang] for _ in range(n)]

    def bitext(self, n: int, src: str = "de", trg: str = "en") -> tuple[list[str], list[str]]:
        triples = [self.triple() for _ in range(n)]
        return [t[src] for t in triples], [t[trg] for t in triples]
