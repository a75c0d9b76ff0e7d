#!/usr/bin/env python3
"""Regenerate the bundled proxy corpus under tests/data/proxy.

The corpus stands in for Train91 / Set5 when those third-party datasets are
not available. Images come from the sample data shipped with scikit-image and
scikit-learn; see tests/data/proxy/SOURCES.md.
"""
import pathlib

import numpy as np
import skimage.data as sk
from PIL import Image
from sklearn.datasets import load_sample_images

ROOT = pathlib.Path(__file__).resolve().parents[1] / "tests" / "data" / "proxy"


def crop(im, y, x, h, w):
    return im[y:y + h, x:x + w]


def shrink(im, f):
    pil = Image.fromarray(im)
    return np.asarray(pil.resize((im.shape[1] // f, im.shape[0] // f), Image.LANCZOS))


def save(im, sub, name):
    path = ROOT / sub / f"{name}.png"
    path.parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(im).save(path, optimize=True)


def main():
    china, flower = load_sample_images().images
    test = {
        "astronaut": crop(sk.astronaut(), 0, 120, 288, 288),
        "camera": crop(sk.camera(), 40, 120, 252, 252),
        "chelsea": crop(sk.chelsea(), 0, 90, 279, 279),
        "coffee": crop(sk.coffee(), 60, 120, 240, 360),
        "rocket": crop(sk.rocket(), 60, 200, 240, 240),
    }
    train = {
        "china": shrink(crop(china, 0, 0, 426, 639), 2),
        "flower": shrink(crop(flower, 0, 0, 426, 639), 2),
        "ihc": shrink(sk.immunohistochemistry(), 2),
        "brick": crop(sk.brick(), 0, 0, 240, 240),
        "grass": crop(sk.grass(), 0, 0, 240, 240),
        "gravel": crop(sk.gravel(), 0, 0, 240, 240),
        "moon": crop(sk.moon(), 100, 100, 240, 240),
        "page": sk.page(),
        "text": sk.text(),
        "coins": shrink(sk.coins(), 1)[:300, :],
        "hubble": shrink(crop(sk.hubble_deep_field(), 0, 0, 480, 480), 2),
        "retina": shrink(crop(sk.retina(), 300, 300, 800, 800), 3),
        "cell": shrink(sk.cell(), 2),
    }
    for name, im in test.items():
        save(np.ascontiguousarray(im), "test", name)
    for name, im in train.items():
        save(np.ascontiguousarray(im), "train", name)


if __name__ == "__main__":
    main()
