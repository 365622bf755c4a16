#!/usr/bin/env python3
"""Build the synthetic inflection fixture shipped under tests/data/.

Each topic queries one inflected surface form per root.  Relevant
documents use *other* inflected variants of the same roots (never the
query's surface form), so an exact-match run cannot retrieve them;
judged-nonrelevant documents mention the query's exact surface forms
once, buried in filler.  Stemming conflates the variants and flips the
ranking.  The generator asserts that every variant set actually
conflates under the affix stemmer before writing anything.

Usage: python3 tools/make_inflection_fixture.py tests/data
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from tirkit.corpus import Document, write_trec_docs  # noqa: E402
from tirkit.turkish_affix import stem_affix  # noqa: E402

# root -> inflected variants (asserted to share the root's stem)
VARIANTS = {
    "kedi": ["kediler", "kedinin", "kediye", "kedide", "kediden", "kedileri"],
    "ev": ["evler", "evin", "eve", "evde", "evden", "evimiz"],
    "kitap": ["kitaplar", "kitabın", "kitaba", "kitapta", "kitaptan", "kitabı"],
    "okul": ["okullar", "okulun", "okula", "okulda", "okuldan", "okulu"],
    "araba": ["arabalar", "arabanın", "arabaya", "arabada", "arabayla", "arabamız"],
    "asker": ["askerler", "askerin", "askere", "askerde", "askerden", "askeri"],
    "şehir": ["şehirler", "şehirde", "şehirden", "şehire", "şehirlere", "şehirlerde"],
    "çiçek": ["çiçekler", "çiçeğin", "çiçeğe", "çiçekte", "çiçekten", "çiçeği"],
}

FILLER = (
    "gazete haber siyaset ekonomi spor hava durum bugün yarın belki "
    "sonra önce ayrıca fakat zaten gene meclis oturum gündem karar"
).split()


def main(out_dir: str) -> None:
    out = Path(out_dir)
    roots = list(VARIANTS)
    # every variant set must conflate to one stem (the query's), and the
    # stems must stay distinct across roots
    conflated = {}
    for root, variants in VARIANTS.items():
        stem = stem_affix(variants[0])
        for variant in variants:
            got = stem_affix(variant)
            assert got == stem, f"{variant} stems to {got}, not {stem}"
        conflated[root] = stem
    assert len(set(conflated.values())) == len(roots), "stems must be distinct"

    docs = []
    topics = []
    qrels = []
    filler_at = 0

    def take_filler(n):
        nonlocal filler_at
        picked = [FILLER[(filler_at + i) % len(FILLER)] for i in range(n)]
        filler_at += n
        return picked

    for t, root in enumerate(roots, start=1):
        variants = VARIANTS[root]
        query_form = variants[0]
        other_forms = variants[1:]
        topics.append((str(t), query_form))

        # relevant: dense in non-query variants, no exact query form
        for r in range(3):
            forms = [other_forms[(r + i) % len(other_forms)] for i in range(4)]
            docno = f"REL-{root}-{r}"
            docs.append(Document(docno, " ".join(forms + take_filler(2))))
            qrels.append((str(t), docno, 1))

        # judged nonrelevant: one exact query mention lost in filler
        for n in range(3):
            docno = f"NON-{root}-{n}"
            docs.append(Document(docno, " ".join([query_form] + take_filler(9))))
            qrels.append((str(t), docno, 0))

    write_trec_docs(docs, out / "inflection_docs.trec")
    with open(out / "inflection_topics.tsv", "w", encoding="utf-8") as f:
        for qid, text in topics:
            f.write(f"{qid}\t{text}\n")
    with open(out / "inflection_qrels.txt", "w", encoding="utf-8") as f:
        for qid, docno, rel in qrels:
            f.write(f"{qid} 0 {docno} {rel}\n")
    print(f"{len(docs)} docs, {len(topics)} topics, {len(qrels)} judgments")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data")
