#!/usr/bin/env python3
"""Builds MNIST IDX files under data/mnist/.

Preferred source is the official IDX files (train-images-idx3-ubyte etc.) --
point --from-idx-dir at them (optionally keeping only the first --train-limit
training rows, the desk-scale default). When the
official files are unavailable, --from-npm-package converts the digit JSONs
bundled in the npm `mnist` package (10k real MNIST samples stored as
round(pixel/255, 3), which recovers the exact byte values) into a seeded
train/test split in the official IDX layout.

  npm pack mnist && tar xzf mnist-*.tgz
  python3 tools/make_mnist_idx.py --from-npm-package package --out data/mnist
"""

import argparse
import json
import os
import random
import struct


def write_idx(out_dir, prefix, images, labels):
    img_path = os.path.join(out_dir, f"{prefix}-images-idx3-ubyte")
    lbl_path = os.path.join(out_dir, f"{prefix}-labels-idx1-ubyte")
    with open(img_path, "wb") as f:
        f.write(struct.pack(">IIII", 2051, len(images), 28, 28))
        for img in images:
            f.write(bytes(img))
    with open(lbl_path, "wb") as f:
        f.write(struct.pack(">II", 2049, len(labels)))
        f.write(bytes(labels))
    print(f"wrote {img_path} ({len(images)} images) and {lbl_path}")


def from_npm(package_dir, out_dir, test_count, seed):
    samples = []
    for digit in range(10):
        with open(os.path.join(package_dir, "src", "digits", f"{digit}.json")) as f:
            flat = json.load(f)["data"]
        assert len(flat) % 784 == 0
        for i in range(len(flat) // 784):
            pixels = [round(v * 255) for v in flat[i * 784 : (i + 1) * 784]]
            samples.append((pixels, digit))
    rng = random.Random(seed)
    rng.shuffle(samples)
    test = samples[:test_count]
    train = samples[test_count:]
    os.makedirs(out_dir, exist_ok=True)
    write_idx(out_dir, "train", [s[0] for s in train], [s[1] for s in train])
    write_idx(out_dir, "t10k", [s[0] for s in test], [s[1] for s in test])


def read_idx(idx_dir, prefix):
    with open(os.path.join(idx_dir, f"{prefix}-images-idx3-ubyte"), "rb") as f:
        magic, n, rows, cols = struct.unpack(">IIII", f.read(16))
        assert magic == 2051 and rows == 28 and cols == 28
        images = [list(f.read(784)) for _ in range(n)]
    with open(os.path.join(idx_dir, f"{prefix}-labels-idx1-ubyte"), "rb") as f:
        magic, n2 = struct.unpack(">II", f.read(8))
        assert magic == 2049 and n2 == n
        labels = list(f.read(n))
    return images, labels


def from_idx(idx_dir, out_dir, train_limit):
    os.makedirs(out_dir, exist_ok=True)
    train_images, train_labels = read_idx(idx_dir, "train")
    if train_limit and train_limit < len(train_images):
        train_images = train_images[:train_limit]
        train_labels = train_labels[:train_limit]
    write_idx(out_dir, "train", train_images, train_labels)
    test_images, test_labels = read_idx(idx_dir, "t10k")
    write_idx(out_dir, "t10k", test_images, test_labels)


def main():
    ap = argparse.ArgumentParser()
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--from-idx-dir", help="directory with the official IDX files")
    src.add_argument("--from-npm-package", help="extracted npm `mnist` package directory")
    ap.add_argument("--out", default="data/mnist")
    ap.add_argument("--test-count", type=int, default=2000)
    ap.add_argument("--train-limit", type=int, default=0, help="0 = keep all (idx source only)")
    ap.add_argument("--seed", type=int, default=20240817)
    args = ap.parse_args()
    if args.from_idx_dir:
        from_idx(args.from_idx_dir, args.out, args.train_limit)
    else:
        from_npm(args.from_npm_package, args.out, args.test_count, args.seed)


if __name__ == "__main__":
    main()
