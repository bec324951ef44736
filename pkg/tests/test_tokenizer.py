import random

import pytest

from morphotok import (
    TokenizerConfig,
    Vocabulary,
    detokenize,
    normalize,
    pretokenize,
    tokenize_text,
    wordpiece_tokenize,
)

from .synthetic import random_vocab, random_word


class TestNormalize:
    def test_case_fold(self, cfg):
        assert normalize("Nephropathy", cfg) == "nephropathy"

    def test_accent_strip(self, cfg):
        assert normalize("naïve", cfg) == "naive"

    def test_whitespace_canonicalized(self, cfg):
        assert normalize("a\tb", cfg) == "a b"
        assert normalize("  a \n b  ", cfg) == "a b"

    def test_control_characters_removed(self, cfg):
        assert normalize("a\x00b\x07c", cfg) == "abc"

    def test_case_kept_when_disabled(self):
        cfg = TokenizerConfig(lowercase=False)
        assert normalize("Nephropathy", cfg) == "Nephropathy"

    def test_accents_kept_when_disabled(self):
        cfg = TokenizerConfig(lowercase=True, strip_accents=False)
        assert normalize("naïve", cfg) == "naïve"


class TestPretokenize:
    def test_punctuation_isolated(self):
        assert pretokenize("nephr-o-pathy") == ["nephr", "-", "o", "-", "pathy"]

    def test_whitespace_split(self):
        assert pretokenize("kidney failure") == ["kidney", "failure"]

    def test_empty(self):
        assert pretokenize("") == []

    def test_mixed(self):
        assert pretokenize("a,b c") == ["a", ",", "b", "c"]


class TestWordpiece:
    def test_table_style_bert(self, mini_bert_vocab, cfg):
        assert wordpiece_tokenize("nephropathy", mini_bert_vocab, cfg) == [
            "ne", "##ph", "##rop", "##athy",
        ]

    def test_table_style_pubmed(self, mini_pubmed_vocab, cfg):
        assert wordpiece_tokenize("nephroblastoma", mini_pubmed_vocab, cfg) == [
            "nephr", "##oblastoma",
        ]

    def test_identity_case(self, cfg):
        vocab = Vocabulary(tokens=("[UNK]", "a"))
        assert wordpiece_tokenize("a", vocab, cfg) == ["a"]

    def test_whole_word_unknown_on_mid_word_failure(self, cfg):
        vocab = Vocabulary(tokens=("[UNK]", "a", "##b"))
        assert wordpiece_tokenize("abc", vocab, cfg) == ["[UNK]"]

    def test_word_longer_than_cap_is_unknown(self, cfg):
        vocab = Vocabulary(tokens=("[UNK]", "a", "##a"))
        word = "a" * 101
        assert wordpiece_tokenize(word, vocab, cfg) == ["[UNK]"]
        small_cap = TokenizerConfig(max_word_chars=3)
        assert wordpiece_tokenize("aaaa", vocab, small_cap) == ["[UNK]"]

    def test_empty_word_rejected(self, mini_bert_vocab, cfg):
        with pytest.raises(ValueError):
            wordpiece_tokenize("", mini_bert_vocab, cfg)

    def test_greedy_prefers_longest(self, cfg):
        vocab = Vocabulary(tokens=("[UNK]", "a", "ab", "abc", "##d"))
        assert wordpiece_tokenize("abcd", vocab, cfg) == ["abc", "##d"]


class TestTokenizeText:
    def test_composition(self, mini_bert_vocab, cfg):
        left = tokenize_text("nephropathy", mini_bert_vocab, cfg)
        right = tokenize_text("today", mini_bert_vocab, cfg)
        assert tokenize_text("Nephropathy today", mini_bert_vocab, cfg) == left + right

    def test_empty(self, mini_bert_vocab, cfg):
        assert tokenize_text("", mini_bert_vocab, cfg) == []

    def test_punctuated_word_tokenized_per_piece(self, mini_bert_vocab, cfg):
        tokens = tokenize_text("nephr-o-pathy", mini_bert_vocab, cfg)
        expected = []
        for word in ["nephr", "-", "o", "-", "pathy"]:
            expected.extend(wordpiece_tokenize(word, mini_bert_vocab, cfg))
        assert tokens == expected


class TestDetokenize:
    def test_prefix_strip(self, mini_pubmed_vocab):
        assert detokenize(["nephr", "##oblastoma"], mini_pubmed_vocab) == "nephroblastoma"

    def test_identity(self, mini_bert_vocab):
        assert detokenize(["a"], mini_bert_vocab) == "a"

    def test_unknown_token_is_lossy(self, mini_bert_vocab):
        with pytest.raises(ValueError):
            detokenize(["[UNK]"], mini_bert_vocab)


class TestProperties:
    def test_round_trip_on_random_cases(self, cfg):
        rng = random.Random(2024)
        checked = 0
        for _ in range(2000):
            word = random_word(rng)
            vocab = random_vocab(rng, word)
            tokens = wordpiece_tokenize(word, vocab, cfg)
            if tokens == [cfg.unknown_token]:
                continue
            assert detokenize(tokens, vocab) == word
            checked += 1
        assert checked > 100

    def test_full_character_coverage_never_unknown(self, cfg):
        alphabet = "abcdef"
        tokens = ["[UNK]"] + list(alphabet) + ["##" + c for c in alphabet]
        vocab = Vocabulary(tokens=tuple(tokens))
        rng = random.Random(7)
        for _ in range(500):
            word = random_word(rng, alphabet)
            assert cfg.unknown_token not in wordpiece_tokenize(word, vocab, cfg)

    def test_determinism(self, mini_bert_vocab, cfg):
        runs = {tuple(tokenize_text("acute nephropathy today", mini_bert_vocab, cfg)) for _ in range(20)}
        assert len(runs) == 1
