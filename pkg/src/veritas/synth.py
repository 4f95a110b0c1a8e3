"""Synthetic fixture corpora in the standard directory layout.

Generates hotel-style review trees for offline testing and demos: two word
distributions that overlap heavily but differ in a minority of cue words,
mimicking the lexical gap between fabricated and genuine reviews.  This is
fixture data only; it makes no claim of linguistic realism.
"""

from __future__ import annotations

from pathlib import Path

from .labels import DECEPTIVE, TRUTHFUL
from .rng import Xoshiro256StarStar, derive_seed

_HOTELS = [
    "affinia", "allegro", "amalfi", "ambassador", "conrad", "fairmont",
    "hardrock", "hilton", "homewood", "hyatt", "intercontinental", "james",
    "knickerbocker", "monaco", "omni", "palmer", "sheraton", "sofitel",
    "swissotel", "talbott",
]

_SHARED = (
    "the a an and but so because while when after before we i they it was were "
    "is are had have has this that those these room hotel stay stayed night "
    "nights staff desk check front city chicago street view window bed beds "
    "bathroom shower water breakfast coffee restaurant bar lobby elevator "
    "floor booked reservation arrived left location walk walking close near "
    "price paid rate money trip travel business family husband wife kids "
    "weekend week again really very quite just also even still too only back "
    "time first last next one two three nice clean comfortable quiet small "
    "big little old new good bad great place experience service"
).split()

_DECEPTIVE_CUES = (
    "amazing wonderful luxurious luxury fabulous incredible exquisite stunning "
    "delightful perfect flawless magnificent pampered indulgent lavish opulent "
    "breathtaking dream heavenly paradise spectacular unforgettable marvelous "
    "gorgeous sumptuous elegant divine splendid world-class five-star"
).split()

_TRUTHFUL_CUES = (
    "parking garage hallway carpet thermostat remote ice machine vending "
    "receipt checkout keycard towels pillow mattress curtains outlet wifi "
    "internet gym pool fee charge bill invoice maintenance construction "
    "renovation conditioner faucet drain elevator-bank shuttle cab taxi"
).split()

_POSITIVE_CUES = (
    "loved enjoyed friendly helpful spotless recommend pleasant smooth cozy "
    "fresh bright tasty quick easy happy impressed sparkling"
).split()

_NEGATIVE_CUES = (
    "dirty rude noisy broken smelled stained slow overpriced disappointing "
    "cold leaking cramped worn musty unhelpful awful terrible avoid"
).split()

_FILLER = (
    "lorem ipsum dolor sit amet consectetur adipiscing elit sed do eiusmod "
    "tempor incididunt ut labore et dolore magna aliqua enim minim veniam"
).split()


def _sentence(rng: Xoshiro256StarStar, label: str, polarity: str) -> str:
    length = 7 + rng.below(10)
    words = []
    for _ in range(length):
        roll = rng.below(100)
        if roll < 72:
            pool = _SHARED
        elif roll < 81:
            # class cue with cross-talk: a quarter of cue words come from
            # the wrong class, keeping the task non-trivial
            own = label == DECEPTIVE
            if rng.below(4) == 0:
                own = not own
            pool = _DECEPTIVE_CUES if own else _TRUTHFUL_CUES
        elif roll < 93:
            pool = _POSITIVE_CUES if polarity == "positive" else _NEGATIVE_CUES
        else:
            pool = _FILLER
        words.append(pool[rng.below(len(pool))])
    words[0] = words[0].capitalize()
    return " ".join(words) + ("!" if rng.below(6) == 0 else ".")


def make_review_text(rng: Xoshiro256StarStar, label: str, polarity: str) -> str:
    n_sentences = 5 + rng.below(8)
    return " ".join(_sentence(rng, label, polarity) for _ in range(n_sentences))


def generate_hotel_corpus(
    root: str | Path,
    seed: int = 7,
    hotels: int = 20,
    per_hotel: int = 80,
) -> Path:
    """Write a synthetic review tree under ``root`` and return its path.

    Default shape matches the published hotel corpus: 20 hotels x 80 reviews,
    split evenly between labels and polarities, spread over 5 fold
    directories (1600 files, 800 per label, 400 per polarity per label).
    """
    if per_hotel % 4:
        raise ValueError("per_hotel must be divisible by 4 (label x polarity)")
    root = Path(root)
    per_cell = per_hotel // 4
    for h in range(hotels):
        hotel = _HOTELS[h % len(_HOTELS)]
        seen = h // len(_HOTELS)
        hotel = hotel if not seen else f"{hotel}{seen + 1}"
        for polarity in ("positive", "negative"):
            for label in (DECEPTIVE, TRUTHFUL):
                if label == DECEPTIVE:
                    origin = "MTurk"
                else:
                    origin = "TripAdvisor" if polarity == "positive" else "Web"
                sub = f"{polarity}_polarity/{label}_from_{origin}"
                for i in range(1, per_cell + 1):
                    rng = Xoshiro256StarStar(
                        derive_seed(seed, ((h * 2 + (polarity == "negative")) * 2
                                           + (label == TRUTHFUL)) * per_cell + i)
                    )
                    fold = (i - 1) % 5 + 1
                    path = root / sub / f"fold{fold}" / f"{label[0]}_{hotel}_{i}.txt"
                    path.parent.mkdir(parents=True, exist_ok=True)
                    path.write_text(make_review_text(rng, label, polarity) + "\n",
                                    encoding="utf-8")
    return root


def main(argv: list[str] | None = None) -> int:
    import argparse

    p = argparse.ArgumentParser(description="generate a synthetic hotel review corpus")
    p.add_argument("out", help="output directory")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--hotels", type=int, default=20)
    p.add_argument("--per-hotel", type=int, default=80)
    args = p.parse_args(argv)
    path = generate_hotel_corpus(args.out, seed=args.seed, hotels=args.hotels,
                                 per_hotel=args.per_hotel)
    print(f"wrote {args.hotels * args.per_hotel} reviews under {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
