#!/usr/bin/env python3
"""Regenerate data/test_image_32.png: smooth gradients with a disc and a square."""
import sys

import numpy as np
from PIL import Image

n = 32
y, x = np.mgrid[0:n, 0:n] / (n - 1)
r = 0.15 + 0.7 * x
g = 0.2 + 0.6 * y
b = 0.5 + 0.3 * np.sin(2 * np.pi * (x + y))
disc = (x - 0.35) ** 2 + (y - 0.4) ** 2 < 0.04
r[disc], g[disc], b[disc] = 0.9, 0.25, 0.2
square = (x > 0.6) & (x < 0.9) & (y > 0.55) & (y < 0.85)
r[square], g[square], b[square] = 0.1, 0.7, 0.85
img = np.clip(np.stack([r, g, b], -1), 0, 1)
out = sys.argv[1] if len(sys.argv) > 1 else "data/test_image_32.png"
Image.fromarray((img * 255 + 0.5).astype(np.uint8), "RGB").save(out)
