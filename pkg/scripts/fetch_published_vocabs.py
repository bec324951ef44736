#!/usr/bin/env python3
"""Download the published vocab.txt files used by the data-dependent tests.

Needs outbound network access. Files land in tests/data/published/ (or the
directory named by MORPHOTOK_DATA). The shared-task segmentation data and a
biomedical word lexicon are distributed under their own terms and must be
placed there manually:

    eng.word.dev.tsv    gold rows "word<TAB>morph @@morph ..."
    biomed_lexicon.tsv  rows "word<TAB>count" from a biomedical phrase corpus
"""

import os
import sys
import urllib.request
from pathlib import Path

VOCAB_URLS = {
    "bert-base-uncased-vocab.txt":
        "https://huggingface.co/bert-base-uncased/resolve/main/vocab.txt",
    "pubmedbert-vocab.txt":
        "https://huggingface.co/microsoft/BiomedNLP-PubMedBERT-base-uncased-abstract-fulltext"
        "/resolve/main/vocab.txt",
}


def main() -> int:
    default_dir = Path(__file__).resolve().parent.parent / "tests" / "data" / "published"
    target = Path(os.environ.get("MORPHOTOK_DATA", default_dir))
    target.mkdir(parents=True, exist_ok=True)
    for filename, url in VOCAB_URLS.items():
        dest = target / filename
        if dest.exists():
            print(f"already present: {dest}")
            continue
        print(f"fetching {url}")
        try:
            with urllib.request.urlopen(url, timeout=60) as response:
                dest.write_bytes(response.read())
        except OSError as exc:
            print(f"failed: {exc}", file=sys.stderr)
            return 1
        print(f"wrote {dest}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
