"""Exit criteria, one test per criterion.

Each test carries an `acceptance` marker; the terminal summary prints one
pass/fail/skip line per criterion. Criteria needing published data files
(real vocab files, shared-task data) skip with instructions when the files
are absent.
"""

import itertools
import json
import random
import subprocess
import sys
import time
from collections import Counter
from pathlib import Path

import pytest

from morphotok import (
    FeatureTemplate,
    MorphemeAnnotation,
    TaggerModel,
    TokenizerConfig,
    TrainConfig,
    WordpieceSegmenter,
    align_morphemes,
    detokenize,
    evaluate_segmenter,
    extract_features,
    load_sigmorphon,
    load_vocab,
    segment_word,
    segmentation_f1,
    segmentation_to_tags,
    tag_word,
    train_tagger,
    wordpiece_tokenize,
)
from morphotok.vocabuild import assemble_vocab, count_subwords, extract_unique_words
from morphotok.vocab import Vocabulary
from morphotok.cli import main as cli_main

from .conftest import (
    BERT_VOCAB_FILE,
    BIOMED_LEXICON_FILE,
    DATA_DIR,
    PUBMED_VOCAB_FILE,
    SIGMORPHON_DEV_FILE,
    require_published,
)
from .synthetic import make_corpus, random_vocab, random_word

PUBLISHED_TOKENIZATIONS = {
    "bert": [
        ("nephropathy", ["ne", "##ph", "##rop", "##athy"]),
        ("nephrectomy", ["ne", "##ph", "##re", "##ct", "##omy"]),
        ("nephroblastoma", ["ne", "##ph", "##ro", "##bla", "##sto", "##ma"]),
        ("nephrocalcinosis", ["ne", "##ph", "##ro", "##cal", "##cino", "##sis"]),
    ],
    "pubmed": [
        ("nephropathy", ["nephropathy"]),
        ("nephrectomy", ["nephrectomy"]),
        ("nephroblastoma", ["nephr", "##oblastoma"]),
        ("nephrocalcinosis", ["nephr", "##ocalcin", "##osis"]),
    ],
}


@pytest.mark.acceptance("published-vocab tokenization fixtures (8 words)")
def test_published_vocab_tokenizations():
    require_published(BERT_VOCAB_FILE, PUBMED_VOCAB_FILE)
    cfg = TokenizerConfig()
    bert = load_vocab(BERT_VOCAB_FILE)
    pubmed = load_vocab(PUBMED_VOCAB_FILE)
    assert len(bert) == 30522

    started = time.perf_counter()
    for word, expected in PUBLISHED_TOKENIZATIONS["bert"]:
        assert wordpiece_tokenize(word, bert, cfg) == expected, word
    for word, expected in PUBLISHED_TOKENIZATIONS["pubmed"]:
        assert wordpiece_tokenize(word, pubmed, cfg) == expected, word
    assert time.perf_counter() - started < 1.0


@pytest.mark.acceptance("metric fixture: micro 4/9 and word F1 0.4")
def test_metric_fixture():
    from morphotok import SurfaceSegmentation

    def seg(*parts):
        return SurfaceSegmentation.from_segments(list(parts))

    pairs = [
        (seg("nephr", "o", "pathy"), seg("nephr", "o", "pathy")),
        (seg("ne", "ph", "rop", "athy"), seg("nephr", "o", "pathy")),
        (seg("nephr", "opathy"), seg("nephr", "o", "pathy")),
    ]
    micro = segmentation_f1(pairs, mode="micro")
    assert micro.true_positive == 4
    assert micro.predicted_total == 9
    assert micro.gold_total == 9
    assert abs(micro.precision - 4 / 9) < 1e-12
    assert abs(micro.recall - 4 / 9) < 1e-12
    assert abs(micro.f1 - 4 / 9) < 1e-12

    partial = segmentation_f1([pairs[2]], mode="micro")
    assert abs(partial.f1 - 0.4) < 1e-12


@pytest.mark.acceptance("round-trip and greedy maximality over 10,000 random cases")
def test_round_trip_property_suite():
    rng = random.Random(424242)
    round_trips = 0
    maximality_checks = 0
    for _ in range(10000):
        word = random_word(rng)
        vocab = random_vocab(rng, word)
        cfg = TokenizerConfig()
        tokens = wordpiece_tokenize(word, vocab, cfg)
        if tokens != [cfg.unknown_token]:
            assert detokenize(tokens, vocab) == word
            round_trips += 1
            if len(vocab) <= 50:
                cursor = 0
                prefix = vocab.continuation_prefix
                for token in tokens:
                    piece = token[len(prefix):] if cursor > 0 else token
                    for longer in range(len(piece) + 1, len(word) - cursor + 1):
                        candidate = word[cursor:cursor + longer]
                        if cursor > 0:
                            candidate = prefix + candidate
                        assert candidate not in vocab, (word, token, candidate)
                        maximality_checks += 1
                    cursor += len(piece)
    assert round_trips > 2000
    assert maximality_checks > 10000


@pytest.mark.acceptance("alignment: 5,000-word zero-edit recovery + connector validity")
def test_alignment_synthetic_lexicon():
    # zero-edit: concatenation equals the surface, boundaries must be exact
    exact = 0
    for word, _, parts in make_corpus(seed=1001, n_words=5000):
        seg, warnings = align_morphemes(MorphemeAnnotation(word, tuple(parts)))
        assert warnings == []
        assert seg.segments() == parts
        exact += 1
    assert exact == 5000

    # injected connecting vowels: every output must stay a valid covering
    # segmentation (the constructor enforces coverage and contiguity)
    for word, _, parts in make_corpus(seed=2002, n_words=1000, connector_prob=0.5):
        seg, _ = align_morphemes(MorphemeAnnotation(word, tuple(parts)))
        assert seg.surface == word
        assert seg.spans[0][0] == 0 and seg.spans[-1][1] == len(word)

    seg, _ = align_morphemes(MorphemeAnnotation("onconeural", ("onco", "neur", "al")))
    assert segmentation_to_tags(seg) == "BIIIBIIIBI"


def _sequence_score(model, word, tags):
    total = 0.0
    for position, label in enumerate(tags):
        for feature in extract_features(word, position, model.template):
            total += model.weights.get((feature, label), 0.0)
        if position > 0:
            total += model.transitions.get((tags[position - 1], label), 0.0)
    return total


@pytest.mark.acceptance("tagger: Viterbi oracle (len<=12) + synthetic corpus F1 >= 0.90")
def test_tagger_oracle_and_generalization():
    rng = random.Random(606)
    template = FeatureTemplate(radius=2, ngram_orders=(1, 2))
    for length in range(1, 13):
        words = ["".join(rng.choice("abcde") for _ in range(length)) for _ in range(3)]
        weights = {}
        for word in words:
            for position in range(length):
                for feature in extract_features(word, position, template):
                    for label in "BI":
                        weights.setdefault((feature, label), rng.uniform(-1.0, 1.0))
        transitions = {(a, b): rng.uniform(-1.0, 1.0) for a in "BI" for b in "BI"}
        model = TaggerModel(template=template, weights=weights, transitions=transitions)
        for word in words:
            best = max(
                ("B" + "".join(tail) for tail in itertools.product("BI", repeat=length - 1)),
                key=lambda tags: _sequence_score(model, word, tags),
            )
            viterbi = tag_word(model, word)
            assert _sequence_score(model, word, viterbi) == _sequence_score(model, word, best)
            assert viterbi == best, word

    started = time.perf_counter()
    corpus = make_corpus(seed=12345, n_words=5000, n_morphemes=200, connector_prob=0.3)
    data = [(word, tags) for word, tags, _ in corpus]
    split = int(len(data) * 0.8)
    model = train_tagger(data[:split], TrainConfig(epochs=10, seed=7))
    tp = fp = fn = 0
    for word, gold in data[split:]:
        predicted = tag_word(model, word)
        predicted_boundaries = {i for i, t in enumerate(predicted) if t == "B" and i > 0}
        gold_boundaries = {i for i, t in enumerate(gold) if t == "B" and i > 0}
        tp += len(predicted_boundaries & gold_boundaries)
        fp += len(predicted_boundaries - gold_boundaries)
        fn += len(gold_boundaries - predicted_boundaries)
    precision = tp / (tp + fp)
    recall = tp / (tp + fn)
    f1 = 2 * precision * recall / (precision + recall)
    elapsed = time.perf_counter() - started
    assert f1 >= 0.90, f1
    assert elapsed < 120.0, elapsed


def _pipeline_fixture():
    corpus = make_corpus(seed=31337, n_words=1000)
    words = [word for word, _, _ in corpus]
    alphabet = sorted({ch for word in words for ch in word})
    morpheme_pool = sorted({parts[0] for _, _, parts in corpus})[:40]
    # full-word entries make those words single-segment; since surfaces are
    # unique, their word-initial subwords are singletons and the min-count
    # filter has something to remove
    full_words = sorted(words)[:25]
    tokens = (
        ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]
        + alphabet
        + ["##" + ch for ch in alphabet]
        + morpheme_pool
        + ["##" + m for m in morpheme_pool]
        + full_words
    )
    seed_vocab = Vocabulary(tokens=tuple(dict.fromkeys(tokens)))
    return words, seed_vocab


@pytest.mark.acceptance("vocabulary pipeline equals brute-force recount/filter/merge")
def test_vocab_pipeline_oracle(tmp_path):
    words, seed_vocab = _pipeline_fixture()
    cfg = TokenizerConfig()
    segmenter = WordpieceSegmenter(seed_vocab, cfg)

    word_counts = extract_unique_words(words, cfg)
    assert len(word_counts) == 1000
    counts = count_subwords(segmenter, word_counts)

    # brute-force recount, filter, and merge written with plain loops
    recount = Counter()
    for word in word_counts:
        segments = segment_word(segmenter, word).segments()
        for position, segment in enumerate(segments):
            recount[segment if position == 0 else "##" + segment] += 1
    assert counts.counts == dict(recount)

    base = Vocabulary(tokens=("[PAD]", "[UNK]", "aa", "zz"))
    built = assemble_vocab(counts, min_count=2, base=base)
    survivors = {s for s, c in recount.items() if c >= 2}
    expected_new = sorted(
        (s for s in survivors if s not in {"[PAD]", "[UNK]", "aa", "zz"}),
        key=lambda s: (-recount[s], s),
    )
    assert list(built.tokens) == ["[PAD]", "[UNK]", "aa", "zz"] + expected_new

    # stage cardinalities via the CLI report, against the same oracle
    phrases_file = tmp_path / "phrases.txt"
    phrases_file.write_text("".join(w + "\n" for w in words), encoding="utf-8")
    seed_vocab_file = tmp_path / "seed_vocab.txt"
    from morphotok import save_vocab

    save_vocab(seed_vocab, seed_vocab_file)
    base_file = tmp_path / "base_vocab.txt"
    save_vocab(base, base_file)
    out_vocab = tmp_path / "built.txt"
    report_file = tmp_path / "report.jsonl"
    code = cli_main([
        "build-vocab", "--phrases", str(phrases_file),
        "--backend", "vocab", "--vocab", str(seed_vocab_file),
        "--min-count", "2", "--base", str(base_file),
        "--output", str(out_vocab), "--report", str(report_file),
    ])
    assert code == 0
    stages = {
        entry["stage"]: entry["count"]
        for entry in (json.loads(line) for line in report_file.read_text().splitlines())
    }
    assert stages == {
        "unique_words": 1000,
        "unique_subwords": len(recount),
        "post_filter": len(survivors),
        "post_merge": len(built),
    }
    # decreasing then increasing cardinality shape
    assert stages["unique_subwords"] > stages["post_filter"]
    assert stages["post_merge"] > stages["post_filter"]
    assert load_vocab(out_vocab) == built


@pytest.mark.acceptance("real-data segmentation F1: published tokenizers on biomedical subset")
def test_real_data_biomedical_f1():
    require_published(BERT_VOCAB_FILE, PUBMED_VOCAB_FILE, SIGMORPHON_DEV_FILE, BIOMED_LEXICON_FILE)
    started = time.perf_counter()
    annotations = load_sigmorphon(SIGMORPHON_DEV_FILE)
    lexicon = {}
    with open(BIOMED_LEXICON_FILE, encoding="utf-8") as stream:
        for line in stream:
            columns = line.rstrip("\n").split("\t")
            if len(columns) >= 2:
                lexicon[columns[0]] = int(columns[1])
    from morphotok import filter_biomedical_subset

    subset = filter_biomedical_subset(annotations, lexicon, min_count=5)
    assert subset, "biomedical filter produced an empty subset"

    cfg = TokenizerConfig()
    bert_score = evaluate_segmenter(WordpieceSegmenter(load_vocab(BERT_VOCAB_FILE), cfg), subset)
    pubmed_score = evaluate_segmenter(WordpieceSegmenter(load_vocab(PUBMED_VOCAB_FILE), cfg), subset)
    assert abs(bert_score.f1 - 0.162) <= 0.030, bert_score.f1
    assert abs(pubmed_score.f1 - 0.192) <= 0.030, pubmed_score.f1
    assert time.perf_counter() - started < 300.0


def _run_cli(args, cwd):
    return subprocess.run(
        [sys.executable, "-m", "morphotok", *args],
        cwd=cwd, capture_output=True, check=True,
    ).stdout


@pytest.mark.acceptance("determinism: seeded commands rerun byte-identical")
def test_seeded_commands_are_deterministic(tmp_path):
    root = Path(__file__).resolve().parent.parent
    vocab = DATA_DIR / "mini_bert_vocab.txt"

    corpus = tmp_path / "corpus.txt"
    corpus.write_text(
        "".join(f"acute nephropathy case {i % 5}\n" for i in range(50)), encoding="utf-8"
    )

    def run_twice(args, outputs):
        blobs = []
        for _ in range(2):
            stdout = _run_cli(args, root)
            blob = [stdout]
            for path in outputs:
                blob.append(Path(path).read_bytes())
                Path(path).unlink()
            blobs.append(blob)
        assert blobs[0] == blobs[1], args

    tokenized = tmp_path / "tokens.txt"
    run_twice(
        ["tokenize", "--vocab", str(vocab), "--input", str(corpus), "--output", str(tokenized)],
        [tokenized],
    )

    model = tmp_path / "model.json"
    run_twice(
        ["train-tagger", "--data", str(DATA_DIR / "sigmorphon_sample.tsv"),
         "--output", str(model), "--epochs", "5", "--seed", "77"],
        [model],
    )

    instances = tmp_path / "instances.jsonl"
    run_twice(
        ["sample-bins", "--input", str(corpus), "--bins", "1,5,20", "--n-per-bin", "3",
         "--seed", "11", "--output", str(instances)],
        [instances],
    )

    built = tmp_path / "built_vocab.txt"
    report = tmp_path / "report.jsonl"
    run_twice(
        ["build-vocab", "--phrases", str(DATA_DIR / "phrases.txt"),
         "--backend", "vocab", "--vocab", str(vocab),
         "--min-count", "1", "--output", str(built), "--report", str(report)],
        [built, report],
    )
