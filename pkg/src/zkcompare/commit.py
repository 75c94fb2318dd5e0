"""SHA3-256 Merkle commitments and the Fiat-Shamir transcript."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .algebra.field import FieldElement, FieldId

LEAF_PREFIX = b"\x00"
NODE_PREFIX = b"\x01"
CHALLENGE_LABEL = b"chal"


def sha3(data: bytes) -> bytes:
    return hashlib.sha3_256(data).digest()


def hash_leaf(leaf: bytes) -> bytes:
    return sha3(LEAF_PREFIX + leaf)


def hash_node(left: bytes, right: bytes) -> bytes:
    return sha3(NODE_PREFIX + left + right)


@dataclass(frozen=True)
class MerkleTree:
    leaves: tuple[bytes, ...]
    levels: tuple[tuple[bytes, ...], ...]

    @property
    def root(self) -> bytes:
        return self.levels[-1][0]

    @property
    def height(self) -> int:
        return len(self.levels) - 1


@dataclass(frozen=True)
class MerklePath:
    leaf_index: int
    siblings: tuple[bytes, ...]

    def to_bytes(self) -> bytes:
        return self.leaf_index.to_bytes(4, "big") + b"".join(self.siblings)

    @classmethod
    def from_bytes(cls, data: bytes, height: int) -> MerklePath:
        if len(data) != 4 + 32 * height:
            raise ValueError(f"path of height {height} must be {4 + 32 * height} bytes")
        index = int.from_bytes(data[:4], "big")
        siblings = tuple(data[4 + 32 * i : 36 + 32 * i] for i in range(height))
        return cls(index, siblings)


def merkle_commit(leaves: list[bytes]) -> MerkleTree:
    """Build the tree; the leaf level is padded to a power of two by repeating
    the last leaf hash."""
    if not leaves:
        raise ValueError("cannot commit to an empty leaf list")
    level = [hash_leaf(leaf) for leaf in leaves]
    size = 1
    while size < len(level):
        size *= 2
    level.extend([level[-1]] * (size - len(level)))
    levels = [tuple(level)]
    while len(level) > 1:
        level = [hash_node(level[i], level[i + 1]) for i in range(0, len(level), 2)]
        levels.append(tuple(level))
    return MerkleTree(tuple(leaves), tuple(levels))


def merkle_open(tree: MerkleTree, index: int) -> MerklePath:
    if not 0 <= index < len(tree.leaves):
        raise IndexError(f"leaf index {index} out of range [0, {len(tree.leaves)})")
    siblings = []
    pos = index
    for level in tree.levels[:-1]:
        siblings.append(level[pos ^ 1])
        pos >>= 1
    return MerklePath(index, tuple(siblings))


def merkle_verify(root: bytes, leaf: bytes, path: MerklePath) -> bool:
    node = hash_leaf(leaf)
    pos = path.leaf_index
    if pos < 0 or pos >> len(path.siblings):
        return False
    for sibling in path.siblings:
        if pos & 1:
            node = hash_node(sibling, node)
        else:
            node = hash_node(node, sibling)
        pos >>= 1
    return node == root


@dataclass(frozen=True)
class Transcript:
    """Value-semantic hash chain; every absorb or draw returns a new transcript."""

    state: bytes = field(default=bytes(32))
    absorb_count: int = 0

    def absorb(self, label: bytes, data: bytes) -> Transcript:
        return Transcript(sha3(self.state + label + data), self.absorb_count + 1)

    def _advance(self) -> Transcript:
        return self.absorb(CHALLENGE_LABEL, b"")

    def challenge_field(self, fid: FieldId) -> tuple[FieldElement, Transcript]:
        value = int.from_bytes(self.state, "big") % fid.modulus
        return FieldElement(value, fid), self._advance()

    def challenge_index(self, bound: int) -> tuple[int, Transcript]:
        if bound < 1:
            raise ValueError("index bound must be at least 1")
        return int.from_bytes(self.state, "big") % bound, self._advance()


def transcript_absorb(t: Transcript, label: bytes, data: bytes) -> Transcript:
    return t.absorb(label, data)


def transcript_challenge_field(t: Transcript, fid: FieldId) -> tuple[FieldElement, Transcript]:
    return t.challenge_field(fid)


def transcript_challenge_index(t: Transcript, bound: int) -> tuple[int, Transcript]:
    return t.challenge_index(bound)
