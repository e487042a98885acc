"""Synthetic union-of-subspaces generation plus real-dataset loaders.

Data matrices are p x n with one sample per column throughout.
"""

import gzip
import os
import struct
from dataclasses import dataclass

import numpy as np
from PIL import Image

MATRIX_MAGIC = b"LRSCMAT1"


@dataclass(frozen=True)
class DatasetDescriptor:
    name: str
    train_samples: int
    test_samples: int
    dimension: int
    classes: int


DESCRIPTORS = {
    "yaleb": DatasetDescriptor("Extended Yale B", 0, 2432, 192 * 168, 38),
    "mnist": DatasetDescriptor("MNIST", 60000, 10000, 28 * 28, 10),
    "usps": DatasetDescriptor("USPS", 7291, 2007, 16 * 16, 10),
}


@dataclass(frozen=True)
class SyntheticSpec:
    """Controls the union-of-subspaces generator."""

    ambient_dim: int
    subspace_dims: tuple
    points_per_subspace: tuple
    noise_sigma: float = 0.0
    corruption_fraction: float = 0.0
    corruption_magnitude: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise ValueError("ambient_dim must be positive")
        if len(self.subspace_dims) != len(self.points_per_subspace):
            raise ValueError("subspace_dims and points_per_subspace must align")
        if not self.subspace_dims:
            raise ValueError("at least one subspace is required")
        if any(d < 1 or d > self.ambient_dim for d in self.subspace_dims):
            raise ValueError("subspace dimensions must lie in [1, ambient_dim]")
        if any(n < 1 for n in self.points_per_subspace):
            raise ValueError("points_per_subspace entries must be positive")
        if not 0.0 <= self.corruption_fraction <= 1.0:
            raise ValueError("corruption_fraction must lie in [0, 1]")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be nonnegative")


def generate_synthetic(spec):
    """Draw points from a union of random subspaces with optional corruption.

    Returns (X, labels, A0, E0) where X = A0 + E0 + Gaussian noise, A0 is
    the clean union-of-subspaces matrix and E0 the planted sparse errors.
    """
    rng = np.random.default_rng(spec.seed)
    p = spec.ambient_dim
    blocks, labels = [], []
    for idx, (d, n_i) in enumerate(zip(spec.subspace_dims, spec.points_per_subspace)):
        basis, _ = np.linalg.qr(rng.standard_normal((p, d)))
        coeffs = rng.standard_normal((d, n_i))
        blocks.append(basis @ coeffs)
        labels.extend([idx] * n_i)
    A0 = np.concatenate(blocks, axis=1)
    labels = np.asarray(labels, dtype=int)
    n = A0.shape[1]
    E0 = np.zeros_like(A0)
    n_corrupt = round(spec.corruption_fraction * p * n)
    if n_corrupt:
        flat = rng.choice(p * n, size=n_corrupt, replace=False)
        signs = rng.choice([-1.0, 1.0], size=n_corrupt)
        E0.ravel()[flat] = signs * spec.corruption_magnitude
    X = A0 + E0
    if spec.noise_sigma > 0:
        X = X + spec.noise_sigma * rng.standard_normal(A0.shape)
    return X, labels, A0, E0


def downsample_box(image, factor=4):
    """Average over factor x factor blocks; dimensions must divide evenly."""
    image = np.asarray(image, dtype=float)
    h, w = image.shape
    if h % factor or w % factor:
        raise ValueError(f"image shape {image.shape} not divisible by {factor}")
    return image.reshape(h // factor, factor, w // factor, factor).mean(axis=(1, 3))


YALEB_NATIVE = (192, 168)
YALEB_GROUPS = {1: (0, 10), 2: (10, 20), 3: (20, 30), 4: (30, 38)}


def load_yaleb(root, group):
    """Load one subject group of the cropped Extended Yale B faces.

    ``root`` holds one subdirectory per subject with 192x168 grayscale
    images; ambient-light frames are skipped.  Images are box-downsampled
    to 48x42 and flattened column-major, so each column has 2016 entries.
    Groups 1-3 cover ten subjects each, group 4 the last eight.
    """
    if group not in YALEB_GROUPS:
        raise ValueError(f"group must be in 1..4, got {group}")
    subjects = sorted(
        entry for entry in os.listdir(root) if os.path.isdir(os.path.join(root, entry))
    )
    if len(subjects) < YALEB_GROUPS[group][1]:
        raise FileNotFoundError(
            f"{root}: found {len(subjects)} subject directories, need at least "
            f"{YALEB_GROUPS[group][1]}"
        )
    lo, hi = YALEB_GROUPS[group]
    columns, labels = [], []
    for label, subject in enumerate(subjects[lo:hi]):
        subject_dir = os.path.join(root, subject)
        files = sorted(
            f
            for f in os.listdir(subject_dir)
            if f.lower().endswith(".pgm") and "ambient" not in f.lower()
        )
        if not files:
            raise FileNotFoundError(f"{subject_dir}: no face images found")
        for fname in files:
            path = os.path.join(subject_dir, fname)
            img = np.asarray(Image.open(path), dtype=float)
            if img.shape != YALEB_NATIVE:
                raise ValueError(f"{path}: expected {YALEB_NATIVE} image, got {img.shape}")
            small = downsample_box(img, 4) / 255.0
            columns.append(small.flatten(order="F"))
            labels.append(label)
    return np.column_stack(columns), np.asarray(labels, dtype=int)


def _open_maybe_gzip(path):
    if path.endswith(".gz"):
        return gzip.open(path, "rb")
    return open(path, "rb")


def _find_file(root, candidates):
    for name in candidates:
        path = os.path.join(root, name)
        for full in (path, path + ".gz"):
            if os.path.isfile(full):
                return full
    raise FileNotFoundError(f"none of {candidates} found under {root}")


def _read_idx(path, expected_magic):
    with _open_maybe_gzip(path) as fh:
        header = fh.read(8)
        if len(header) < 8:
            raise ValueError(f"{path}: truncated header")
        magic, count = struct.unpack(">ii", header)
        if magic != expected_magic:
            raise ValueError(f"{path}: bad magic {magic}, expected {expected_magic}")
        if expected_magic == 2051:
            rows, cols = struct.unpack(">ii", fh.read(8))
            data = fh.read(count * rows * cols)
            if len(data) != count * rows * cols:
                raise ValueError(f"{path}: truncated image data")
            return np.frombuffer(data, dtype=np.uint8).reshape(count, rows * cols)
        data = fh.read(count)
        if len(data) != count:
            raise ValueError(f"{path}: truncated label data")
        return np.frombuffer(data, dtype=np.uint8)


def load_mnist(root, split="train"):
    """Load an MNIST split from its standard big-endian binary files.

    Returns a 784 x n matrix with pixel values in [0, 1] and the labels.
    """
    prefix = {"train": "train", "test": "t10k"}.get(split)
    if prefix is None:
        raise ValueError(f"split must be 'train' or 'test', got {split!r}")
    images_path = _find_file(root, [f"{prefix}-images-idx3-ubyte", f"{prefix}-images.idx3-ubyte"])
    labels_path = _find_file(root, [f"{prefix}-labels-idx1-ubyte", f"{prefix}-labels.idx1-ubyte"])
    images = _read_idx(images_path, 2051)
    labels = _read_idx(labels_path, 2049).astype(int)
    if images.shape[0] != labels.size:
        raise ValueError(f"{root}: image/label count mismatch")
    if labels.size and (labels.min() < 0 or labels.max() > 9):
        raise ValueError(f"{labels_path}: label out of [0, 9]")
    return images.T.astype(float) / 255.0, labels


def load_usps(root, split="train"):
    """Load a USPS split from the whitespace label-then-pixels text format.

    Pixel values in [-1, 1] are rescaled to [0, 1]; columns have 256
    entries.  Accepts a directory containing zip.train/zip.test (optionally
    gzipped) or a direct file path.
    """
    root = os.fspath(root)
    if os.path.isfile(root) or os.path.isfile(root + ".gz"):
        path = root if os.path.isfile(root) else root + ".gz"
    else:
        if split not in ("train", "test"):
            raise ValueError(f"split must be 'train' or 'test', got {split!r}")
        path = _find_file(root, [f"zip.{split}", f"usps.{split}", f"usps.{split}.txt"])
    columns, labels = [], []
    with _open_maybe_gzip(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            tokens = raw.split()
            if not tokens:
                continue
            if len(tokens) != 257:
                raise ValueError(f"{path}:{lineno}: expected label plus 256 pixels")
            label = int(float(tokens[0]))
            if label == 10:
                label = 0
            if not 0 <= label <= 9:
                raise ValueError(f"{path}:{lineno}: label out of [0, 9]")
            pixels = np.asarray([float(tok) for tok in tokens[1:]])
            columns.append((pixels + 1.0) / 2.0)
            labels.append(label)
    if not columns:
        raise ValueError(f"{path}: no samples found")
    return np.column_stack(columns), np.asarray(labels, dtype=int)


def subsample_per_class(X, labels, per_class, seed=None):
    """Pick per_class samples from every class.

    With seed=None the first samples in file order are taken; otherwise the
    choice is seeded-random without replacement.
    """
    labels = np.asarray(labels)
    rng = None if seed is None else np.random.default_rng(seed)
    keep = []
    for cls in np.unique(labels):
        idx = np.flatnonzero(labels == cls)
        if idx.size < per_class:
            raise ValueError(f"class {cls} has only {idx.size} samples, need {per_class}")
        if rng is None:
            keep.extend(idx[:per_class])
        else:
            keep.extend(sorted(rng.choice(idx, size=per_class, replace=False)))
    keep = np.asarray(keep)
    return X[:, keep], labels[keep]


def save_matrix(path, X):
    """Write X in the package's binary interchange format.

    Layout: 8-byte magic, little-endian int64 rows and cols, a one-byte
    element-type code (1 = float64), then column-major float64 data.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise ValueError("only 2-D matrices are supported")
    with open(path, "wb") as fh:
        fh.write(MATRIX_MAGIC)
        fh.write(struct.pack("<qqB", X.shape[0], X.shape[1], 1))
        fh.write(np.asfortranarray(X).tobytes(order="F"))


def load_matrix(path):
    with open(path, "rb") as fh:
        magic = fh.read(8)
        if magic != MATRIX_MAGIC:
            raise ValueError(f"{path}: bad magic {magic!r}")
        rows, cols, code = struct.unpack("<qqB", fh.read(17))
        if code != 1:
            raise ValueError(f"{path}: unknown element type code {code}")
        data = fh.read(rows * cols * 8)
        if len(data) != rows * cols * 8:
            raise ValueError(f"{path}: truncated data section")
    return np.frombuffer(data, dtype="<f8").reshape((rows, cols), order="F").copy()
