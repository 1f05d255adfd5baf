#!/usr/bin/env python3
"""Export a lexicon TSV (term, relation, candidate) from WordNet via NLTK.

Only terms that occur in the given phrase or dataset files are exported.
For every term the script writes its hypernyms, the hyponyms of each of
those hypernyms, and its synonyms; rlcomp decides which of them to use.

    pip install nltk
    python3 -m nltk.downloader wordnet
    python3 tools/wordnet_lexicon.py dataset.tsv > lexicon.tsv
"""

import argparse
import re
import sys


def phrase_terms(paths):
    terms = set()
    for path in paths:
        with open(path, encoding="utf-8") as f:
            for line in f:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                phrase = re.split(r"[\t,]", line, maxsplit=1)[0]
                terms.update(t for t in re.split(r"[^0-9a-z\u0080-\U0010ffff]+", phrase.lower()) if t)
    return sorted(terms)


def lemma_text(name):
    return name.replace("_", " ").lower()


def export(terms, wordnet, pos=None):
    rows = set()
    for term in terms:
        synsets = wordnet.synsets(term, pos=pos)
        for synset in synsets:
            for lemma in synset.lemma_names():
                rows.add((term, "synonym", lemma_text(lemma)))
            for hyper in synset.hypernyms() + synset.instance_hypernyms():
                for h in hyper.lemma_names():
                    hname = lemma_text(h)
                    rows.add((term, "hypernym", hname))
                    for hypo in hyper.hyponyms() + hyper.instance_hyponyms():
                        for x in hypo.lemma_names():
                            rows.add((hname, "hyponym", lemma_text(x)))
    return sorted(r for r in rows if r[0] != r[2])


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("inputs", nargs="+", help="phrase or dataset files")
    parser.add_argument("--pos", choices=["n", "v", "a", "r"], default=None,
                        help="restrict to one part of speech (default: all)")
    args = parser.parse_args(argv)

    from nltk.corpus import wordnet  # imported late so --help works without nltk

    out = sys.stdout
    out.write("# term\trelation\tcandidate\n")
    for term, relation, candidate in export(phrase_terms(args.inputs), wordnet, args.pos):
        out.write(f"{term}\t{relation}\t{candidate}\n")


if __name__ == "__main__":
    main()
