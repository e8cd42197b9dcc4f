#!/usr/bin/env python3
# Copyright 2026 The wbpc Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates tests/data: photographs, gradients and the 4x4 golden image.

The PNG files double as pixel sources and as compression baselines; they
are written with Pillow's optimizing encoder. Needs numpy, Pillow and
scikit-image.
"""

import os
import sys

import numpy as np
from PIL import Image
from skimage import data

PHOTOS = ["astronaut", "camera", "coffee", "chelsea", "immunohistochemistry",
          "moon", "coins", "brick", "grass", "gravel", "rocket", "clock"]


def save_png(path, arr):
    Image.fromarray(arr).save(path, optimize=True)


def gradients(size=512):
    y, x = np.mgrid[0:size, 0:size].astype(np.float64)
    n = size - 1
    out = {}
    out["gradient_linear_gray8"] = np.round(x * 255 / n).astype(np.uint8)
    out["gradient_diagonal_rgb8"] = np.stack(
        [np.round(x * 255 / n), np.round(y * 255 / n),
         np.round((x + y) * 255 / (2 * n))], -1).astype(np.uint8)
    r = np.hypot(x - size / 2, y - size / 2)
    out["gradient_radial_gray16"] = np.round(
        65535 * (1 - r / r.max())).astype(np.uint16)
    g = 0.5 + 0.25 * np.sin(x / 80) + 0.25 * np.cos(y / 65)
    out["gradient_wave_gray8"] = np.round(255 * g).astype(np.uint8)
    return out


# Small enough to trace by hand: a few signs, a zero run, a bright corner.
GOLDEN = np.array([[12, 40, 33, 200],
                   [7, 90, 91, 250],
                   [0, 60, 61, 255],
                   [5, 5, 5, 5]], dtype=np.uint8)


def main():
    root = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(__file__), "..", "tests", "data")
    os.makedirs(os.path.join(root, "photos"), exist_ok=True)
    os.makedirs(os.path.join(root, "gradients"), exist_ok=True)
    for name in PHOTOS:
        save_png(os.path.join(root, "photos", name + ".png"),
                 getattr(data, name)())
    for name, arr in gradients().items():
        save_png(os.path.join(root, "gradients", name + ".png"), arr)
    with open(os.path.join(root, "golden_4x4.pgm"), "wb") as f:
        f.write(b"P5\n4 4\n255\n" + GOLDEN.tobytes())


if __name__ == "__main__":
    main()
