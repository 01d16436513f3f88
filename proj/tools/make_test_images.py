#!/usr/bin/env python3
"""Regenerates the 512x512 grayscale PGM fixtures in tests/data from scikit-image's bundled samples."""
import pathlib

import numpy as np
import skimage.data

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"


def write_pgm(path, img):
    img = np.asarray(img, dtype=np.uint8)
    h, w = img.shape
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n255\n" % (w, h))
        f.write(img.tobytes())


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    write_pgm(OUT / "camera.pgm", skimage.data.camera())
    rgb = skimage.data.astronaut().astype(np.float64)
    # BT.601 luma
    luma = rgb @ np.array([0.299, 0.587, 0.114])
    write_pgm(OUT / "astronaut.pgm", np.clip(np.floor(luma + 0.5), 0, 255))
    write_pgm(OUT / "moon.pgm", skimage.data.moon())


if __name__ == "__main__":
    main()
