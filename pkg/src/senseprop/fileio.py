"""File formats.

Embeddings: binary, little-endian.
    bytes 0-7    magic ``SPEMBED\\0``
    8-11   version (u32) = 1
    12-15  modality tag length (u32)
    16-23  n (u64)
    24-31  d (u64)
    32-39  id-table byte offset (u64)
    40-    modality tag (utf-8), then n*d float64 row-major,
           then the id table: per node u32 length + utf-8 bytes.

Inventory TSV: ``verb<TAB>sense[<TAB>motion|non-motion]``, one row per
(verb, sense); row order defines first-sense and tie-break order.

Labels TSV: ``node<TAB>verb[<TAB>sense]``; a missing third column or ``-``
marks an unlabeled node.

Sense-embedding TSV: ``verb<TAB>sense<TAB>v1<TAB>v2...``.

Results CSV header: ``modality,class,protocol,lpc,seed_count,mean_acc,std_acc``.
Ablation CSV header: ``modality,class,protocol,lpc,seed,accuracy`` (one row
per seed, plot-ready).
"""

from __future__ import annotations

import csv
import struct
import warnings
from pathlib import Path

import numpy as np

from .errors import FormatError, InputError
from .evaluate import ExperimentResult, SenseEmbeddingSet
from .graph import EmbeddingSet
from .model import NodeLabeling, SenseInventory

MAGIC = b"SPEMBED\x00"
VERSION = 1
_HEADER = struct.Struct("<8sIIQQQ")

NORM_KEEP_TOL = 1e-6  # rows within this of unit norm are kept bit-exact
NORM_WARN_TOL = 1e-4  # rows beyond this are renormalized with a warning


def write_embeddings(emb: EmbeddingSet, path) -> None:
    path = Path(path)
    tag = emb.modality_tag.encode("utf-8")
    data = np.ascontiguousarray(emb.vectors, dtype="<f8").tobytes()
    id_table_offset = _HEADER.size + len(tag) + len(data)
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, len(tag), emb.n, emb.dim, id_table_offset))
        fh.write(tag)
        fh.write(data)
        for node in emb.node_ids:
            b = node.encode("utf-8")
            fh.write(struct.pack("<I", len(b)))
            fh.write(b)


def read_embeddings(path) -> EmbeddingSet:
    path = Path(path)
    raw = path.read_bytes()
    if len(raw) < _HEADER.size:
        raise FormatError(path, "file shorter than header", offset=len(raw))
    magic, version, tag_len, n, d, id_off = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise FormatError(path, f"bad magic {magic!r}", offset=0)
    if version != VERSION:
        raise FormatError(path, f"unsupported version {version}", offset=8)
    if n == 0 or d == 0:
        raise FormatError(path, f"degenerate shape n={n}, d={d}", offset=16)
    data_start = _HEADER.size + tag_len
    data_end = data_start + n * d * 8
    if data_end > len(raw) or id_off != data_end:
        raise FormatError(path, f"truncated or inconsistent payload (expected {data_end} bytes "
                                f"of vectors, id table at {id_off})", offset=len(raw))
    tag = raw[_HEADER.size:data_start].decode("utf-8")
    vectors = np.frombuffer(raw[data_start:data_end], dtype="<f8").reshape(n, d).copy()
    node_ids = []
    pos = id_off
    for i in range(n):
        if pos + 4 > len(raw):
            raise FormatError(path, f"truncated id table at entry {i}", offset=pos)
        (length,) = struct.unpack_from("<I", raw, pos)
        pos += 4
        if pos + length > len(raw):
            raise FormatError(path, f"truncated id table at entry {i}", offset=pos)
        node_ids.append(raw[pos:pos + length].decode("utf-8"))
        pos += length
    if not np.isfinite(vectors).all():
        bad = int(np.where(~np.isfinite(vectors).all(axis=1))[0][0])
        raise FormatError(path, f"non-finite value in embedding row {bad}", offset=data_start)
    norms = np.linalg.norm(vectors, axis=1)
    zero = np.where(norms == 0)[0]
    if zero.size:
        raise FormatError(path, f"zero-norm embedding row {int(zero[0])}")
    drift = np.abs(norms - 1.0)
    off = drift > NORM_KEEP_TOL
    if off.any():
        worst = float(drift.max())
        if worst > NORM_WARN_TOL:
            warnings.warn(
                f"{path}: {int(off.sum())} embedding rows off unit norm "
                f"(worst drift {worst:.3g}); renormalized",
                stacklevel=2,
            )
        vectors[off] /= norms[off, None]
    return EmbeddingSet(node_ids, vectors, tag)


def _read_tsv_rows(path):
    path = Path(path)
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            rows.append((lineno, line.split("\t")))
    if not rows:
        raise FormatError(path, "empty input file")
    return rows


def read_inventory(path) -> SenseInventory:
    path = Path(path)
    verbs: list[str] = []
    senses: dict[str, list[str]] = {}
    motion: dict[str, str] = {}
    for lineno, cols in _read_tsv_rows(path):
        if len(cols) < 2:
            raise FormatError(path, f"expected verb<TAB>sense, got {cols!r}", line=lineno)
        verb, sense = cols[0], cols[1]
        if verb not in senses:
            verbs.append(verb)
            senses[verb] = []
        if sense in senses[verb]:
            raise FormatError(path, f"duplicate sense {sense!r} for verb {verb!r}", line=lineno)
        senses[verb].append(sense)
        if len(cols) >= 3 and cols[2]:
            flag = cols[2]
            if flag not in ("motion", "non-motion"):
                raise FormatError(path, f"unknown motion class {flag!r}", line=lineno)
            if motion.setdefault(verb, flag) != flag:
                raise FormatError(path, f"conflicting motion class for verb {verb!r}", line=lineno)
    return SenseInventory(verbs, senses, motion)


def read_labels(path, inventory: SenseInventory) -> NodeLabeling:
    path = Path(path)
    node_ids: list[str] = []
    verbs: dict[str, str] = {}
    sense_of: dict[str, str] = {}
    for lineno, cols in _read_tsv_rows(path):
        if len(cols) < 2:
            raise FormatError(path, f"expected node<TAB>verb[<TAB>sense], got {cols!r}", line=lineno)
        node, verb = cols[0], cols[1]
        if node in verbs:
            raise FormatError(path, f"duplicate node id {node!r}", line=lineno)
        if verb not in inventory.senses:
            raise FormatError(path, f"unknown verb {verb!r}", line=lineno)
        node_ids.append(node)
        verbs[node] = verb
        if len(cols) >= 3 and cols[2] and cols[2] != "-":
            sense = cols[2]
            if sense not in inventory.senses[verb]:
                raise FormatError(
                    path, f"sense {sense!r} is not a candidate of verb {verb!r}", line=lineno
                )
            sense_of[node] = sense
    return NodeLabeling(node_ids, verbs, sense_of)


def read_sense_embeddings(path, inventory: SenseInventory) -> SenseEmbeddingSet:
    path = Path(path)
    vectors: dict[tuple[str, str], np.ndarray] = {}
    dim = None
    for lineno, cols in _read_tsv_rows(path):
        if len(cols) < 3:
            raise FormatError(path, "expected verb<TAB>sense<TAB>values...", line=lineno)
        verb, sense = cols[0], cols[1]
        if verb not in inventory.senses:
            raise FormatError(path, f"unknown verb {verb!r}", line=lineno)
        if sense not in inventory.senses[verb]:
            raise FormatError(path, f"sense {sense!r} not a candidate of {verb!r}", line=lineno)
        try:
            vec = np.array([float(v) for v in cols[2:]], dtype=np.float64)
        except ValueError as exc:
            raise FormatError(path, f"bad float: {exc}", line=lineno) from None
        if dim is None:
            dim = vec.size
        elif vec.size != dim:
            raise FormatError(path, f"dimension {vec.size} != {dim}", line=lineno)
        if (verb, sense) in vectors:
            raise FormatError(path, f"duplicate sense embedding ({verb!r}, {sense!r})", line=lineno)
        vectors[(verb, sense)] = vec
    return SenseEmbeddingSet(vectors)


def write_labels(labeling: NodeLabeling, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for node in labeling.node_ids:
            sense = labeling.senses.get(node, "-")
            fh.write(f"{node}\t{labeling.verbs[node]}\t{sense}\n")


def write_inventory(inventory: SenseInventory, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for verb in inventory.verbs:
            flag = inventory.motion_class.get(verb, "")
            for sense in inventory.senses[verb]:
                row = f"{verb}\t{sense}"
                if flag:
                    row += f"\t{flag}"
                fh.write(row + "\n")


RESULT_COLUMNS = ["modality", "class", "protocol", "lpc", "seed_count", "mean_acc", "std_acc"]
ABLATION_COLUMNS = ["modality", "class", "protocol", "lpc", "seed", "accuracy"]


def write_results_csv(results: list[ExperimentResult], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(RESULT_COLUMNS)
        for r in results:
            writer.writerow(
                [r.modality_tag, r.class_filter, r.protocol, r.labels_per_class,
                 len(r.seeds), repr(r.mean), repr(r.std)]
            )


def write_ablation_csv(results: list[ExperimentResult], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(ABLATION_COLUMNS)
        for r in results:
            for seed, acc in zip(r.seeds, r.accuracies):
                writer.writerow(
                    [r.modality_tag, r.class_filter, r.protocol, r.labels_per_class,
                     seed, repr(acc)]
                )
