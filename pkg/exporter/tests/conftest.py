from __future__ import annotations

from pathlib import Path

import pytest

VOCAB = """[PAD]
[UNK]
[CLS]
[SEP]
[MASK]
the
a
hotel
room
stay
was
great
terrible
parking
luxury
clean
dirty
staff
bed
night
##s
##ed
##ing
wonderful
broken
"""


@pytest.fixture(scope="session")
def tiny_encoder_dir(tmp_path_factory) -> Path:
    """A word-piece tokenizer and a randomly initialized miniature encoder
    saved locally, so tests resolve a real model id without any download."""
    import torch
    from transformers import BertConfig, BertModel, BertTokenizerFast

    model_dir = tmp_path_factory.mktemp("tiny-encoder")
    vocab_file = model_dir / "vocab.txt"
    vocab_file.write_text(VOCAB, encoding="utf-8")
    tokenizer = BertTokenizerFast(vocab_file=str(vocab_file), do_lower_case=True)
    torch.manual_seed(0)
    config = BertConfig(
        vocab_size=tokenizer.vocab_size,
        hidden_size=32,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=64,
        max_position_embeddings=64,
    )
    model = BertModel(config)
    model.eval()
    tokenizer.save_pretrained(model_dir)
    model.save_pretrained(model_dir)
    return model_dir


@pytest.fixture(scope="session")
def mini_ott_root(tmp_path_factory) -> Path:
    """Ten reviews in the standard directory layout."""
    root = tmp_path_factory.mktemp("mini-ott")
    texts = {
        "negative_polarity/deceptive_from_MTurk/fold1/d_alpha_1.txt": "The luxury stay was wonderful.",
        "negative_polarity/deceptive_from_MTurk/fold2/d_alpha_2.txt": "A wonderful luxury hotel night.",
        "negative_polarity/truthful_from_Web/fold1/t_alpha_1.txt": "Parking was broken and dirty.",
        "negative_polarity/truthful_from_Web/fold2/t_alpha_2.txt": "The room was dirty, staff terrible.",
        "positive_polarity/deceptive_from_MTurk/fold1/d_beta_1.txt": "Great wonderful luxury stay!",
        "positive_polarity/deceptive_from_MTurk/fold2/d_beta_2.txt": "A luxury bed, a wonderful night.",
        "positive_polarity/truthful_from_TripAdvisor/fold1/t_beta_1.txt": "Clean room, great parking.",
        "positive_polarity/truthful_from_TripAdvisor/fold2/t_beta_2.txt": "The staff was great, bed clean.",
        "positive_polarity/truthful_from_TripAdvisor/fold3/t_beta_3.txt": "Great clean stay, the parking worked.",
        "positive_polarity/deceptive_from_MTurk/fold3/d_beta_3.txt": "Wonderful great luxury rooms.",
    }
    for rel, text in texts.items():
        path = root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    return root
