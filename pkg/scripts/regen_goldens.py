"""Rewrite the corpus goldens and SHA256SUMS from the bundled model files.

Run after an intentional corpus change, then review the diff by hand
before committing: goldens are only useful if a human checked them.
"""

from stpakit.corpus import corpus_dir, regenerate


def main() -> None:
    for path in regenerate():
        print(path.relative_to(corpus_dir()))


if __name__ == "__main__":
    main()
