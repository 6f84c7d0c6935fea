"""WordNet 3.0 database: flat-file parser, morphy lemmatizer, information
content, Jiang-Conrath similarity, and per-sense keyword extraction.

The parser reads the standard ``index.{noun,verb,adj,adv}`` and
``data.{noun,verb,adj,adv}`` files (space-separated fixed-field records,
hexadecimal word counts, ``|``-delimited glosses) plus the ``*.exc``
exception lists. Only the relation families needed downstream are kept;
meronym/holonym subtypes are merged.

Information content is corpus-derived: each word's count is split evenly
over its synsets, propagated to every hypernym ancestor, add-one smoothed
per synset, and normalized by the root mass of its part of speech. The
verb hierarchy has several roots; a virtual root with ic = 0 joins them so
a lowest common subsumer always exists.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .errors import WordNetLoadError

NOUN, VERB, ADJ, ADV = "n", "v", "a", "r"
OPEN_CLASSES = (NOUN, VERB, ADJ, ADV)

_POS_FILES = {NOUN: "noun", VERB: "verb", ADJ: "adj", ADV: "adv"}

# Pointer symbols collapsed into the relation families used downstream.
_POINTER_MAP = {
    "@": "hypernym",
    "@i": "hypernym",
    "~": "hyponym",
    "~i": "hyponym",
    "%m": "meronym",
    "%s": "meronym",
    "%p": "meronym",
    "#m": "holonym",
    "#s": "holonym",
    "#p": "holonym",
    "*": "entailment",
    ">": "cause",
    "&": "similar",
    "!": "antonym",
}

RELATION_KINDS = (
    "hypernym",
    "hyponym",
    "meronym",
    "holonym",
    "entailment",
    "cause",
    "similar",
    "antonym",
)

# Identical or co-hyponymous senses have jcn distance 0; any large finite
# constant preserves argmax behaviour.
JCN_CAP = 1e7


class SynsetId(NamedTuple):
    offset: int
    pos: str

    def __str__(self) -> str:
        return f"{self.offset:08d}-{self.pos}"

    @classmethod
    def parse(cls, text: str) -> "SynsetId":
        offset, _, pos = text.partition("-")
        if not offset.isdigit() or pos not in OPEN_CLASSES:
            raise ValueError(f"bad synset id {text!r}")
        return cls(int(offset), pos)


# The virtual root joining the verb hierarchy's several roots. Real
# offsets are byte positions past the license header, so 0 never collides.
VIRTUAL_VERB_ROOT = SynsetId(0, VERB)


@dataclass
class Synset:
    id: SynsetId
    lemmas: list[str]
    gloss: str
    examples: list[str]
    relations: dict[str, list[SynsetId]] = field(default_factory=dict)

    def related(self, kind: str) -> list[SynsetId]:
        return self.relations.get(kind, [])


@dataclass(frozen=True, order=True)
class WordType:
    """A (lemma, part-of-speech) pair, the unit of MFS prediction."""

    lemma: str
    pos: str

    def __post_init__(self):
        if self.pos not in OPEN_CLASSES:
            raise ValueError(f"pos must be one of {OPEN_CLASSES}, got {self.pos!r}")
        if not self.lemma or self.lemma != self.lemma.lower():
            raise ValueError(f"lemma must be non-empty lowercase, got {self.lemma!r}")

    def __str__(self) -> str:
        return f"{self.lemma}.{self.pos}"


# Standard WordNet detachment rules, tried when the exception lists miss.
_DETACHMENTS = {
    NOUN: [
        ("s", ""),
        ("ses", "s"),
        ("ves", "f"),
        ("xes", "x"),
        ("zes", "z"),
        ("ches", "ch"),
        ("shes", "sh"),
        ("men", "man"),
        ("ies", "y"),
    ],
    VERB: [
        ("s", ""),
        ("ies", "y"),
        ("es", "e"),
        ("es", ""),
        ("ed", "e"),
        ("ed", ""),
        ("ing", "e"),
        ("ing", ""),
    ],
    ADJ: [("er", ""), ("est", ""), ("er", "e"), ("est", "e")],
    ADV: [],
}


@dataclass
class WordNetDb:
    """Synset graph plus the per-word sense lists, immutable once built."""

    synsets: dict[SynsetId, Synset]
    index: dict[WordType, list[SynsetId]]
    exceptions: dict[str, dict[str, list[str]]] = field(default_factory=dict)
    _ancestor_cache: dict[SynsetId, frozenset[SynsetId]] = field(
        default_factory=dict, repr=False
    )

    def senses(self, word: WordType) -> list[SynsetId]:
        return self.index.get(word, [])

    def has_entry(self, lemma: str, pos: str) -> bool:
        return WordType(lemma, pos) in self.index

    def synset(self, sid: SynsetId) -> Synset:
        return self.synsets[sid]

    def hypernyms(self, sid: SynsetId) -> list[SynsetId]:
        return self.synsets[sid].related("hypernym")

    def ancestors(self, sid: SynsetId) -> frozenset[SynsetId]:
        """Hypernym closure of ``sid``, including ``sid`` itself."""
        cached = self._ancestor_cache.get(sid)
        if cached is not None:
            return cached
        seen: set[SynsetId] = set()
        stack = [sid]
        while stack:
            cur = stack.pop()
            if cur in seen:
                continue
            seen.add(cur)
            stack.extend(self.synsets[cur].related("hypernym"))
        result = frozenset(seen)
        self._ancestor_cache[sid] = result
        return result

    def roots(self, pos: str) -> list[SynsetId]:
        return [
            sid
            for sid, syn in self.synsets.items()
            if sid.pos == pos and not syn.related("hypernym")
        ]


def morphy(db: WordNetDb, surface: str, pos: str) -> list[str]:
    """Candidate lemmas for ``surface`` under ``pos``.

    Checks the exception list first, then applies the detachment rules
    repeatedly until some candidate is found in the index. Only indexed
    candidates are returned; the surface itself comes first when indexed.
    """
    surface = surface.lower()
    exceptions = db.exceptions.get(pos, {})

    def indexed(forms: Iterable[str]) -> list[str]:
        out, seen = [], set()
        for form in forms:
            if form not in seen and db.has_entry(form, pos):
                out.append(form)
                seen.add(form)
        return out

    exc = indexed([surface] + exceptions.get(surface, []))
    if exc:
        return exc

    rules = _DETACHMENTS[pos]

    def apply_rules(forms: list[str]) -> list[str]:
        return [
            form[: -len(old)] + new
            for form in forms
            for old, new in rules
            if form.endswith(old) and len(form) > len(old)
        ]

    forms = apply_rules([surface])
    found = indexed([surface] + forms)
    while not found and forms:
        forms = apply_rules(forms)
        found = indexed(forms)
    return found


# ---------------------------------------------------------------------------
# Database loading


def _parse_data_line(line: str, fname: str, pos_hint: str):
    """One ``data.*`` record -> (Synset, raw pointer list, ss_type)."""
    head, _, gloss_part = line.partition("|")
    fields = head.split()
    declared = fields[0] if fields else "?"
    it = iter(fields)
    try:
        offset = int(next(it))
        next(it)  # lexicographer file number, unused
        ss_type = next(it)
        n_words = int(next(it), 16)
        lemmas = []
        for _ in range(n_words):
            raw = next(it)
            # strip adjective syntactic markers like "(p)"
            lemmas.append(raw.split("(")[0].lower())
            next(it)  # lex_id
        n_ptrs = int(next(it))
        pointers = []
        for _ in range(n_ptrs):
            symbol = next(it)
            target_offset = int(next(it))
            target_pos = next(it)
            next(it)  # source/target lemma nibbles; lexical pointers kept synset level
            pointers.append((symbol, target_offset, target_pos))
        # any remaining fields (verb frames) are ignored
    except (StopIteration, ValueError) as exc:
        raise WordNetLoadError(f"{fname}, byte offset {declared}: {exc}")
    if not lemmas:
        raise WordNetLoadError(f"{fname}, byte offset {offset}: synset without lemmas")

    pos = ADJ if ss_type == "s" else ss_type
    if pos != pos_hint:
        raise WordNetLoadError(f"{fname}, byte offset {offset}: pos {ss_type!r} unexpected")

    examples = re.findall(r'"([^"]*)"', gloss_part)
    gloss = re.sub(r'"[^"]*"', "", gloss_part)
    gloss = "; ".join(p.strip() for p in gloss.split(";") if p.strip())

    synset = Synset(SynsetId(offset, pos), lemmas, gloss, examples)
    return synset, pointers, ss_type


def load_wordnet(directory: str | os.PathLike) -> WordNetDb:
    """Parse a WordNet 3.0 database directory into a linked graph.

    Raises :class:`WordNetLoadError` naming the file (and byte offset
    where applicable) for missing files, malformed records, or dangling
    pointers. Verifies that every noun synset reaches the single noun
    root through hypernyms and that adjective satellites carry a
    similar-to link.
    """
    directory = os.fspath(directory)
    for pos in OPEN_CLASSES:
        for prefix in ("index", "data"):
            path = os.path.join(directory, f"{prefix}.{_POS_FILES[pos]}")
            if not os.path.exists(path):
                raise WordNetLoadError(f"missing {prefix}.{_POS_FILES[pos]}")

    synsets: dict[SynsetId, Synset] = {}
    raw_pointers: dict[SynsetId, list[tuple[str, int, str]]] = {}
    satellites: set[SynsetId] = set()

    for pos in OPEN_CLASSES:
        fname = f"data.{_POS_FILES[pos]}"
        with open(os.path.join(directory, fname), encoding="utf-8") as fh:
            for line in fh:
                if line.startswith(" ") or not line.strip():
                    continue  # license header
                synset, pointers, ss_type = _parse_data_line(line, fname, pos)
                if synset.id in synsets:
                    raise WordNetLoadError(
                        f"{fname}, byte offset {synset.id.offset}: duplicate synset"
                    )
                synsets[synset.id] = synset
                raw_pointers[synset.id] = pointers
                if ss_type == "s":
                    satellites.add(synset.id)

    # link pointers now that all synsets exist
    for sid, pointers in raw_pointers.items():
        relations: dict[str, list[SynsetId]] = {}
        for symbol, target_offset, target_pos in pointers:
            kind = _POINTER_MAP.get(symbol)
            if kind is None:
                continue  # relation family out of scope
            target = SynsetId(target_offset, ADJ if target_pos == "s" else target_pos)
            if target not in synsets:
                raise WordNetLoadError(
                    f"data.{_POS_FILES[sid.pos]}, byte offset {sid.offset}: "
                    f"dangling pointer {symbol} -> {target}"
                )
            relations.setdefault(kind, []).append(target)
        synsets[sid].relations = relations

    index: dict[WordType, list[SynsetId]] = {}
    exceptions: dict[str, dict[str, list[str]]] = {}
    for pos in OPEN_CLASSES:
        fname = f"index.{_POS_FILES[pos]}"
        with open(os.path.join(directory, fname), encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if line.startswith(" ") or not line.strip():
                    continue
                fields = line.split()
                try:
                    lemma = fields[0].lower()
                    n_synsets = int(fields[2])
                    n_ptrs = int(fields[3])
                    offsets = [int(x) for x in fields[6 + n_ptrs :]]
                except (IndexError, ValueError) as exc:
                    raise WordNetLoadError(f"{fname}, line {lineno}: {exc}")
                if len(offsets) != n_synsets:
                    raise WordNetLoadError(
                        f"{fname}, line {lineno}: expected {n_synsets} offsets"
                    )
                sids = []
                for offset in offsets:
                    sid = SynsetId(offset, pos)
                    if sid not in synsets:
                        raise WordNetLoadError(
                            f"{fname}, line {lineno}: unknown synset offset {offset}"
                        )
                    sids.append(sid)
                index[WordType(lemma, pos)] = sids

        exc_path = os.path.join(directory, f"{_POS_FILES[pos]}.exc")
        exceptions[pos] = {}
        if os.path.exists(exc_path):
            with open(exc_path, encoding="utf-8") as fh:
                for line in fh:
                    parts = line.split()
                    if len(parts) >= 2:
                        exceptions[pos][parts[0].lower()] = [p.lower() for p in parts[1:]]

    db = WordNetDb(synsets=synsets, index=index, exceptions=exceptions)
    _validate(db, satellites)
    return db


def _validate(db: WordNetDb, satellites: set[SynsetId]) -> None:
    noun_roots = db.roots(NOUN)
    if any(sid.pos == NOUN for sid in db.synsets) and len(noun_roots) != 1:
        raise WordNetLoadError(
            f"noun hierarchy must have a single root, found {len(noun_roots)}"
        )
    for sid in db.synsets:
        if sid.pos == NOUN:
            # raises on cycles via recursion depth? ancestors() is iterative,
            # so check reachability of the root explicitly
            if noun_roots[0] not in db.ancestors(sid):
                raise WordNetLoadError(f"noun synset {sid} does not reach the root")
    for sid in satellites:
        if not db.synsets[sid].related("similar"):
            raise WordNetLoadError(f"adjective satellite {sid} lacks a similar-to link")


# ---------------------------------------------------------------------------
# Information content and Jiang-Conrath similarity


@dataclass
class IcTable:
    """Per-synset information content in nats, plus per-pos root mass."""

    ic: dict[SynsetId, float]
    pos_totals: dict[str, float] = field(default_factory=dict)

    def get(self, sid: SynsetId) -> float:
        if sid == VIRTUAL_VERB_ROOT:
            return 0.0
        return self.ic[sid]


def compute_ic(counts: Mapping[WordType, int], db: WordNetDb) -> IcTable:
    """Corpus-derived information content for noun and verb synsets.

    Each word's count is split evenly over its synsets; every synset's
    share is added to itself and all its hypernym ancestors. After
    propagation each synset receives add-one smoothing, and
    ic(s) = -ln(mass(s) / root mass). The verb roots are normalized
    against a shared virtual root so ic is comparable across them.
    """
    mass: dict[SynsetId, float] = {
        sid: 0.0 for sid in db.synsets if sid.pos in (NOUN, VERB)
    }
    for word, count in counts.items():
        if word.pos not in (NOUN, VERB) or count <= 0:
            continue
        sids = db.senses(word)
        if not sids:
            continue
        share = count / len(sids)
        for sid in sids:
            for ancestor in db.ancestors(sid):
                mass[ancestor] += share

    for sid in mass:
        mass[sid] += 1.0

    pos_totals: dict[str, float] = {}
    noun_roots = db.roots(NOUN)
    if noun_roots:
        pos_totals[NOUN] = mass[noun_roots[0]]
    verb_roots = db.roots(VERB)
    if verb_roots:
        observed = sum(
            count
            for word, count in counts.items()
            if word.pos == VERB and count > 0 and db.senses(word)
        )
        # virtual root: its own smoothing unit plus all propagated verb mass
        pos_totals[VERB] = 1.0 + float(observed)

    ic: dict[SynsetId, float] = {}
    for sid, m in mass.items():
        total = pos_totals[sid.pos]
        ic[sid] = max(0.0, -math.log(m / total)) if total > 0 else 0.0
    return IcTable(ic=ic, pos_totals=pos_totals)


def lcs(db: WordNetDb, ic: IcTable, a: SynsetId, b: SynsetId) -> SynsetId:
    """Common hypernym ancestor with maximum information content.

    Verb pairs without a real common ancestor fall back to the virtual
    verb root (ic = 0); noun pairs always meet under the noun root.
    """
    if a.pos != b.pos or a.pos not in (NOUN, VERB):
        raise ValueError(f"lcs requires matching noun/verb pos, got {a.pos}/{b.pos}")
    common = db.ancestors(a) & db.ancestors(b)
    if not common:
        if a.pos == VERB:
            return VIRTUAL_VERB_ROOT
        raise WordNetLoadError(f"noun synsets {a}, {b} share no ancestor")
    # ic ties broken toward the deeper node, then deterministically by offset
    return max(
        common, key=lambda sid: (ic.get(sid), len(db.ancestors(sid)), -sid.offset)
    )


def jcn(db: WordNetDb, ic: IcTable, a: SynsetId, b: SynsetId) -> float:
    """Jiang-Conrath similarity: inverse of the IC distance through the LCS.

    Defined over the noun and verb IS-A hierarchies only; cross-pos pairs
    and adjective/adverb senses score 0 ("no evidence", not "unrelated").
    """
    if a.pos != b.pos or a.pos not in (NOUN, VERB):
        return 0.0
    distance = ic.get(a) + ic.get(b) - 2.0 * ic.get(lcs(db, ic, a, b))
    if distance > 0.0:
        return 1.0 / distance
    return JCN_CAP


def save_ic(table: IcTable, path: str | os.PathLike) -> None:
    """TSV serialization: one ``offset<TAB>pos<TAB>ic`` line per synset."""
    with open(path, "w", encoding="utf-8") as fh:
        for sid in sorted(table.ic):
            fh.write(f"{sid.offset}\t{sid.pos}\t{table.ic[sid]:.12g}\n")


def load_ic(path: str | os.PathLike) -> IcTable:
    ic: dict[SynsetId, float] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 3:
                raise WordNetLoadError(f"{path}, line {lineno}: expected 3 fields")
            ic[SynsetId(int(parts[0]), parts[1])] = float(parts[2])
    return IcTable(ic=ic)


# ---------------------------------------------------------------------------
# Keyword extraction

KEYWORD_MODES = ("extended", "umfswe", "light")

# relation families whose members contribute keywords, per mode
_UMFSWE_RELATIONS = ("hypernym", "hyponym")
_EXTENDED_RELATIONS = _UMFSWE_RELATIONS + ("meronym", "holonym", "entailment", "cause", "similar")


def keywords(
    db: WordNetDb,
    s: SynsetId,
    mode: str = "extended",
    stoplist: frozenset[str] = frozenset(),
    include_examples: bool = True,
    exclude_lemma: str | None = None,
) -> set[WordType]:
    """Keyword word types describing sense ``s``.

    ``light`` uses only the gloss and usage examples of ``s`` itself
    (WordNet as a machine-readable dictionary). ``umfswe`` adds the
    synset's own lemmas plus its hypernyms and hyponyms, with their
    glosses and examples. ``extended`` further adds meronyms, holonyms,
    entailments, causes, and similar synsets. Set ``include_examples``
    False to suppress every example-sentence contribution, and
    ``exclude_lemma`` to drop the target word's own lemma.
    """
    if mode not in KEYWORD_MODES:
        raise ValueError(f"unknown keyword mode {mode!r}")
    from .corpus import tokenize, is_content_word  # deferred: corpus imports us

    def gloss_words(syn: Synset) -> Iterable[WordType]:
        texts = [syn.gloss]
        if include_examples:
            texts.extend(syn.examples)
        for text in texts:
            for token in tokenize(text, db):
                if is_content_word(token, stoplist):
                    yield WordType(token.lemma, token.pos)

    def own_lemmas(syn: Synset) -> Iterable[WordType]:
        for lemma in syn.lemmas:
            if lemma not in stoplist:
                yield WordType(lemma, syn.id.pos)

    root_syn = db.synset(s)
    result: set[WordType] = set(gloss_words(root_syn))
    if mode in ("umfswe", "extended"):
        relations = _UMFSWE_RELATIONS if mode == "umfswe" else _EXTENDED_RELATIONS
        result.update(own_lemmas(root_syn))
        for kind in relations:
            for rel_id in root_syn.related(kind):
                rel_syn = db.synset(rel_id)
                result.update(own_lemmas(rel_syn))
                result.update(gloss_words(rel_syn))
    if exclude_lemma is not None:
        result = {wt for wt in result if wt.lemma != exclude_lemma}
    return result
