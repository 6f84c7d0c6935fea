"""Synthetic fixtures: a writer for miniature WordNet 3.0 databases and a
generator for small end-to-end worlds (corpus, bitext, gold annotations).

The writer emits real ``index.*`` / ``data.*`` / ``*.exc`` files, byte
offsets included, so the production parser is exercised bit-for-bit.
Synthetic worlds are built around "domains": a hub synset with a core
word and a handful of context words. Pseudo-words merge two core words
with a skewed frequency split, giving a corpus whose most frequent sense
is known by construction.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field

from .wordnet import SynsetId, WordType

_POS_FILES = {"n": "noun", "v": "verb", "a": "adj", "r": "adv"}

# pointer symbol per builder relation, with the inverse added automatically
_REL_SYMBOLS = {
    "hypernym": "@",
    "hyponym": "~",
    "meronym": "%p",
    "holonym": "#p",
    "member_meronym": "%m",
    "member_holonym": "#m",
    "entailment": "*",
    "cause": ">",
    "similar": "&",
    "antonym": "!",
}
_INVERSES = {
    "hypernym": "hyponym",
    "hyponym": "hypernym",
    "meronym": "holonym",
    "holonym": "meronym",
    "member_meronym": "member_holonym",
    "member_holonym": "member_meronym",
    "similar": "similar",
    "antonym": "antonym",
}


@dataclass
class _SynsetSpec:
    key: str
    pos: str
    lemmas: list[str]
    gloss: str
    examples: list[str]
    satellite: bool
    relations: dict[str, list[str]] = field(default_factory=dict)


class MiniWordNet:
    """Builds a small WordNet database and writes it in the 3.0 file format."""

    def __init__(self):
        self._specs: dict[str, _SynsetSpec] = {}
        self._order: list[str] = []
        self._exceptions: dict[str, list[tuple[str, list[str]]]] = {
            p: [] for p in "nvar"
        }

    def synset(
        self,
        key: str,
        pos: str,
        lemmas: list[str],
        gloss: str = "",
        examples: list[str] | None = None,
        satellite: bool = False,
        **relations: list[str],
    ) -> str:
        """Declare a synset; ``relations`` maps relation name -> target keys."""
        if key in self._specs:
            raise ValueError(f"duplicate synset key {key!r}")
        for name in relations:
            if name not in _REL_SYMBOLS:
                raise ValueError(f"unknown relation {name!r}")
        self._specs[key] = _SynsetSpec(
            key=key,
            pos=pos,
            lemmas=[l.lower().replace(" ", "_") for l in lemmas],
            gloss=gloss,
            examples=list(examples or []),
            satellite=satellite,
            relations={k: list(v) for k, v in relations.items()},
        )
        self._order.append(key)
        return key

    def exception(self, pos: str, inflected: str, *bases: str) -> None:
        self._exceptions[pos].append((inflected.lower(), [b.lower() for b in bases]))

    def _resolved_relations(self) -> dict[str, list[tuple[str, str]]]:
        """Per-key list of (pointer symbol, target key), inverses included."""
        out: dict[str, list[tuple[str, str]]] = {k: [] for k in self._order}
        seen: dict[str, set[tuple[str, str]]] = {k: set() for k in self._order}

        def add(src: str, name: str, dst: str) -> None:
            if dst not in self._specs:
                raise ValueError(f"synset {src!r} points at unknown key {dst!r}")
            entry = (_REL_SYMBOLS[name], dst)
            if entry not in seen[src]:
                out[src].append(entry)
                seen[src].add(entry)

        for key in self._order:
            for name, targets in self._specs[key].relations.items():
                for dst in targets:
                    add(key, name, dst)
                    inverse = _INVERSES.get(name)
                    if inverse:
                        add(dst, inverse, key)
        return out

    def write(self, directory: str | os.PathLike) -> dict[str, SynsetId]:
        """Write the database files; returns builder key -> SynsetId."""
        directory = os.fspath(directory)
        os.makedirs(directory, exist_ok=True)
        relations = self._resolved_relations()

        by_file: dict[str, list[str]] = {p: [] for p in "nvar"}
        for key in self._order:
            by_file[self._specs[key].pos].append(key)

        # first pass: fixed-width templates make line lengths independent
        # of the offsets that get patched in afterwards
        def render(key: str, self_off: int, target_off) -> str:
            spec = self._specs[key]
            ss_type = "s" if spec.satellite else spec.pos
            parts = [f"{self_off:08d}", "00", ss_type, f"{len(spec.lemmas):02x}"]
            for lemma in spec.lemmas:
                parts.extend([lemma, "0"])
            ptrs = relations[key]
            parts.append(f"{len(ptrs):03d}")
            for symbol, dst in ptrs:
                dst_spec = self._specs[dst]
                dst_pos = "s" if dst_spec.satellite else dst_spec.pos
                parts.extend([symbol, f"{target_off(dst):08d}", dst_pos, "0000"])
            if spec.pos == "v":
                parts.extend(["01", "+", "02", "00"])
            gloss = spec.gloss
            for example in spec.examples:
                gloss += f'; "{example}"' if gloss else f'"{example}"'
            parts.append("|")
            return " ".join(parts) + " " + gloss + "  \n"

        # license-style header (skipped by the parser); keeps offsets > 0
        header = "  1 miniature database in the wordnet 3.0 file format  \n"

        offsets: dict[str, int] = {}
        for pos, keys in by_file.items():
            cursor = len(header.encode("utf-8"))
            for key in keys:
                offsets[key] = cursor
                cursor += len(render(key, 0, lambda _d: 0).encode("utf-8"))

        ids = {
            key: SynsetId(offsets[key], self._specs[key].pos) for key in self._order
        }

        for pos, keys in by_file.items():
            path = os.path.join(directory, f"data.{_POS_FILES[pos]}")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(header)
                for key in keys:
                    fh.write(render(key, offsets[key], lambda d: offsets[d]))

        # index: lemma -> synsets in declaration order
        for pos, keys in by_file.items():
            entries: dict[str, list[int]] = {}
            for key in keys:
                for lemma in self._specs[key].lemmas:
                    entries.setdefault(lemma, []).append(offsets[key])
            path = os.path.join(directory, f"index.{_POS_FILES[pos]}")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(header)
                for lemma in sorted(entries):
                    offs = entries[lemma]
                    row = [lemma, pos, str(len(offs)), "0", str(len(offs)), "0"]
                    row += [f"{o:08d}" for o in offs]
                    fh.write(" ".join(row) + "  \n")

        for pos in "nvar":
            path = os.path.join(directory, f"{_POS_FILES[pos]}.exc")
            with open(path, "w", encoding="utf-8") as fh:
                for inflected, bases in sorted(self._exceptions[pos]):
                    fh.write(" ".join([inflected] + bases) + "\n")

        return ids


# ---------------------------------------------------------------------------
# synthetic end-to-end worlds


@dataclass
class PseudoWord:
    word: WordType
    majority: SynsetId  # the sense backed by the skew
    minority: SynsetId
    majority_domain: int
    minority_domain: int


@dataclass
class ToyWorld:
    wordnet_dir: str
    corpus_path: str
    bitext_source_path: str
    bitext_target_path: str
    gold_path: str
    config_path: str
    output_dir: str
    ids: dict[str, SynsetId]
    pseudo_words: list[PseudoWord]
    k: int


def _code(i: int) -> str:
    return chr(97 + i // 26) + chr(97 + i % 26)


def generate_toy_world(
    out_dir: str | os.PathLike,
    n_domains: int = 10,
    ctx_per_domain: int = 5,
    n_pseudowords: int = 5,
    n_sentences: int = 200,
    skew: float = 0.8,
    gold_tokens_per_word: int = 10,
    seed: int = 0,
    dim: int = 24,
    epochs: int = 3,
) -> ToyWorld:
    """Build a complete toy pipeline input set under ``out_dir``.

    Every domain owns a hub synset, one core word, and ``ctx_per_domain``
    context words; glosses name the domain's context words so keyword
    vectors carry the domain signal. Each pseudo-word replaces the core
    words of two domains, appearing with the majority domain's context
    in a ``skew`` fraction of its sentences, so its most frequent sense
    is known by construction. The French side translates token-by-token,
    with the pseudo-word translating per active domain.

    Tokens are purely alphabetic so the tokenizer keeps them intact.
    """
    if 2 * n_pseudowords > n_domains:
        raise ValueError("need at least two domains per pseudo-word")
    out_dir = os.fspath(out_dir)
    os.makedirs(out_dir, exist_ok=True)
    rng = random.Random(seed)

    ctx_words = {
        d: [f"ctx{_code(d)}{chr(97 + j)}" for j in range(ctx_per_domain)]
        for d in range(n_domains)
    }

    wn = MiniWordNet()
    wn.synset("root", "n", ["thing"], "that which exists")
    for d in range(n_domains):
        code = _code(d)
        words = ctx_words[d]
        wn.synset(
            f"hub{d}", "n", [f"area{code}"], " ".join(words), hypernym=["root"]
        )
        wn.synset(
            f"core{d}",
            "n",
            [f"core{code}"],
            "linked with " + " ".join(words[:3]),
            examples=["seen near " + " ".join(words[3:])] if len(words) > 3 else None,
            hypernym=[f"hub{d}"],
        )
        for j, word in enumerate(words):
            others = [w for w in words if w != word][:2]
            wn.synset(
                f"ctx{d}_{j}",
                "n",
                [word],
                "appears with " + " ".join(others),
                hypernym=[f"hub{d}"],
            )

    pseudo_specs = []
    for i in range(n_pseudowords):
        a, b = 2 * i, 2 * i + 1
        # alternate which constituent is the majority so the lowest-index
        # tie-break cannot systematically favour the right answer
        majority, minority = (a, b) if i % 2 == 0 else (b, a)
        lemma = f"pw{_code(i)}"
        pseudo_specs.append((lemma, majority, minority))

    # pseudo-word lemmas join both constituent core synsets
    for lemma, majority, minority in pseudo_specs:
        for d in (majority, minority):
            wn._specs[f"core{d}"].lemmas.append(lemma)

    wordnet_dir = os.path.join(out_dir, "wordnet")
    ids = wn.write(wordnet_dir)

    pseudo_words = [
        PseudoWord(
            word=WordType(lemma, "n"),
            majority=ids[f"core{majority}"],
            minority=ids[f"core{minority}"],
            majority_domain=majority,
            minority_domain=minority,
        )
        for lemma, majority, minority in pseudo_specs
    ]

    fillers = ["the", "of", "and", "with", "near"]

    def domain_sentence(d: int) -> list[str]:
        words = rng.sample(ctx_words[d], min(3, len(ctx_words[d])))
        return [rng.choice(fillers)] + words

    english: list[list[str]] = []
    french: list[list[str]] = []
    for s in range(n_sentences):
        pw = pseudo_words[s % len(pseudo_words)] if rng.random() < 0.7 else None
        if pw is None:
            d = rng.randrange(n_domains)
            tokens = domain_sentence(d)
            active = None
        else:
            active = (
                pw.majority_domain if rng.random() < skew else pw.minority_domain
            )
            tokens = domain_sentence(active)
            tokens.insert(rng.randrange(1, len(tokens) + 1), pw.word.lemma)
        english.append(tokens)
        line_fr = []
        for t in tokens:
            if pw is not None and t == pw.word.lemma:
                line_fr.append(f"fcore{_code(active)}")
            else:
                line_fr.append(f"f{t}")
        french.append(line_fr)

    corpus_path = os.path.join(out_dir, "corpus.txt")
    bitext_source_path = os.path.join(out_dir, "bitext.en.txt")
    bitext_target_path = os.path.join(out_dir, "bitext.fr.txt")
    with open(corpus_path, "w", encoding="utf-8") as fh:
        for tokens in english:
            fh.write(" ".join(tokens) + "\n")
    with open(bitext_source_path, "w", encoding="utf-8") as fh:
        for tokens in english:
            fh.write(" ".join(tokens) + "\n")
    with open(bitext_target_path, "w", encoding="utf-8") as fh:
        for tokens in french:
            fh.write(" ".join(tokens) + "\n")

    gold_path = os.path.join(out_dir, "gold.tsv")
    instance = 0
    with open(gold_path, "w", encoding="utf-8") as fh:
        for pw in pseudo_words:
            majority_tokens = max(
                int(round(skew * gold_tokens_per_word)),
                gold_tokens_per_word // 2 + 1,
            )
            for i in range(gold_tokens_per_word):
                sid = pw.majority if i < majority_tokens else pw.minority
                fh.write(f"g{instance}\t{pw.word.lemma}\tn\t{sid}\n")
                instance += 1
        for d in range(min(n_domains, 4)):
            word = ctx_words[d][0]
            sid = ids[f"ctx{d}_0"]
            for _ in range(3):
                fh.write(f"g{instance}\t{word}\tn\t{sid}\n")
                instance += 1

    k = min(ctx_per_domain, 6)
    output_dir = os.path.join(out_dir, "out")
    config_path = os.path.join(out_dir, "config.txt")
    config_text = f"""# toy pipeline configuration
corpus = {corpus_path}
bitext_source = {bitext_source_path}
bitext_target = {bitext_target_path}
wordnet = {wordnet_dir}
gold = {gold_path}
output_dir = {output_dir}
k = {k}
chi = 0.5,0.4,0.1
keyword_mode = extended
method = wct
dim = {dim}
window = 5
negatives = 5
min_count = 2
subsample = 0
epochs = {epochs}
lr0 = 0.025
align_iterations = 8
pairs = 5000
min_total = 1
seed = {seed}
"""
    with open(config_path, "w", encoding="utf-8") as fh:
        fh.write(config_text)

    return ToyWorld(
        wordnet_dir=wordnet_dir,
        corpus_path=corpus_path,
        bitext_source_path=bitext_source_path,
        bitext_target_path=bitext_target_path,
        gold_path=gold_path,
        config_path=config_path,
        output_dir=output_dir,
        ids=ids,
        pseudo_words=pseudo_words,
        k=k,
    )
