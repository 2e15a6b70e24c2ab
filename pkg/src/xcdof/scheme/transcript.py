"""Simulated communication blocks: channels, precoders, buffers, reports.

A Transcript records one full blocklength of the network: every channel
matrix, every precoding matrix, the per-phase equation buffers and message
sizes.  It is immutable after construction and safe to share; stacked
reception blocks are cached lazily.  Serialization round-trips through a
versioned JSON document for replay and debugging.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .. import errors
from ..config import AntennaConfig
from ..fieldmath import FieldMatrix, hstack, rank_of
from ..params import SchemeParams

TRANSCRIPT_VERSION = 1

Pair = tuple[int, int]


@dataclass(frozen=True)
class BufferedEquation:
    """One overheard single-source equation: a coefficient row over the
    owner transmitter's full message-i symbol vector."""

    phase: int
    owner: int  # transmitter index 1/2
    round_index: int
    row: np.ndarray  # uint64, length = msg size of (phase, owner)


@dataclass
class Transcript:
    kind: str
    config: AntennaConfig
    prime: int
    seed: int
    msg_sizes: dict[Pair, int]
    channels: list[dict[Pair, FieldMatrix]]  # per slot: (i,j) -> N_i x M_j
    precoders: list[dict[Pair, FieldMatrix]]  # per slot: (i,j) -> M_j x m_ij
    phase_of_slot: list[int]
    params: SchemeParams | None = None
    buffers: dict[int, list[BufferedEquation]] = field(default_factory=dict)
    resamples: int = 0
    _gv_cache: dict = field(default_factory=dict, repr=False)
    _vstack_cache: dict = field(default_factory=dict, repr=False)

    @property
    def t_total(self) -> int:
        return len(self.channels)

    def total_symbols(self) -> int:
        return sum(self.msg_sizes.values())

    def achieved_dof(self) -> Fraction:
        return Fraction(self.total_symbols(), self.t_total)

    # -- stacked blocks -------------------------------------------------

    def stacked_precoder(self, i: int, j: int) -> FieldMatrix:
        """V_ij over the whole block: (T*M_j) x m_ij."""
        key = (i, j)
        if key not in self._vstack_cache:
            mats = [self.precoders[t][(i, j)].data for t in range(self.t_total)]
            self._vstack_cache[key] = FieldMatrix(
                np.concatenate(mats, axis=0), self.prime
            )
        return self._vstack_cache[key]

    def received_image(self, rx: int, i: int, j: int) -> FieldMatrix:
        """Stacked image of message (i, j) at receiver rx: (T*N_rx) x m_ij."""
        key = (rx, i, j)
        if key not in self._gv_cache:
            n_rx = self.config.n(rx)
            m = self.msg_sizes[(i, j)]
            out = np.empty((self.t_total * n_rx, m), np.uint64)
            for t in range(self.t_total):
                g = self.channels[t][(rx, j)]
                v = self.precoders[t][(i, j)]
                out[t * n_rx : (t + 1) * n_rx, :] = g.mul(v).data
            self._gv_cache[key] = FieldMatrix(out, self.prime)
        return self._gv_cache[key]

    def received_block(self, rx: int, i: int) -> FieldMatrix:
        """Both transmitters' message-i images at receiver rx, side by side."""
        return hstack([self.received_image(rx, i, 1), self.received_image(rx, i, 2)])

    def rank_ratio(self, i: int) -> Fraction:
        """Dimension ratio of the message-i subspaces at receiver i vs the
        other receiver."""
        num = rank_of(self.received_image(i, i, 1), self.received_image(i, i, 2))
        den = rank_of(
            self.received_image(3 - i, i, 1), self.received_image(3 - i, i, 2)
        )
        if den == 0:
            raise errors.ZeroDenominator(f"message-{i} precoders are all zero")
        return Fraction(num, den)


# -- serialization -------------------------------------------------------------


def _mat_to_list(m: FieldMatrix) -> list[list[int]]:
    return m.tolist()


def transcript_to_dict(t: Transcript) -> dict:
    return {
        "transcript_version": TRANSCRIPT_VERSION,
        "kind": t.kind,
        "config": list(t.config.astuple()),
        "prime": t.prime,
        "seed": t.seed,
        "msg_sizes": {f"{i}{j}": t.msg_sizes[(i, j)] for i in (1, 2) for j in (1, 2)},
        "phase_of_slot": list(t.phase_of_slot),
        "channels": [
            {f"{i}{j}": _mat_to_list(slot[(i, j)]) for i in (1, 2) for j in (1, 2)}
            for slot in t.channels
        ],
        "precoders": [
            {f"{i}{j}": _mat_to_list(slot[(i, j)]) for i in (1, 2) for j in (1, 2)}
            for slot in t.precoders
        ],
        "buffers": {
            str(phase): [
                [eq.owner, eq.round_index, [int(v) for v in eq.row]] for eq in eqs
            ]
            for phase, eqs in sorted(t.buffers.items())
        },
        "resamples": t.resamples,
    }


def transcript_to_json(t: Transcript) -> str:
    return json.dumps(transcript_to_dict(t), sort_keys=True, separators=(",", ":"))


def transcript_from_dict(doc: dict) -> Transcript:
    if doc.get("transcript_version") != TRANSCRIPT_VERSION:
        raise errors.ConfigError(
            f"unsupported transcript_version {doc.get('transcript_version')}"
        )
    cfg = AntennaConfig(*doc["config"])
    prime = doc["prime"]
    msg_sizes = {(i, j): doc["msg_sizes"][f"{i}{j}"] for i in (1, 2) for j in (1, 2)}

    def mats(slots, shape_of):
        out = []
        for slot in slots:
            d = {}
            for i in (1, 2):
                for j in (1, 2):
                    rows, cols = shape_of(i, j)
                    raw = slot[f"{i}{j}"]
                    arr = (
                        np.array(raw, np.uint64)
                        if raw
                        else np.zeros((rows, cols), np.uint64)
                    )
                    arr = arr.reshape(rows, cols)
                    d[(i, j)] = FieldMatrix(arr, prime)
            out.append(d)
        return out

    channels = mats(doc["channels"], lambda i, j: (cfg.n(i), cfg.m(j)))
    precoders = mats(doc["precoders"], lambda i, j: (cfg.m(j), msg_sizes[(i, j)]))
    buffers = {
        int(phase): [
            BufferedEquation(
                phase=int(phase),
                owner=owner,
                round_index=rnd,
                row=np.array(row, np.uint64),
            )
            for owner, rnd, row in eqs
        ]
        for phase, eqs in doc.get("buffers", {}).items()
    }
    return Transcript(
        kind=doc["kind"],
        config=cfg,
        prime=prime,
        seed=doc["seed"],
        msg_sizes=msg_sizes,
        channels=channels,
        precoders=precoders,
        phase_of_slot=list(doc["phase_of_slot"]),
        buffers=buffers,
        resamples=doc.get("resamples", 0),
    )


def transcript_from_json(text: str) -> Transcript:
    return transcript_from_dict(json.loads(text))
