"""LZ78 over raw bytes, with an explicit bit-cost model.

The dictionary starts with the empty phrase at index 0 and grows by one
phrase per emitted token. A token is (phrase_index, next_byte): the
longest known prefix of the remaining input plus the byte that extends
it. Input that ends inside a known phrase emits that phrase's own
(parent_index, last_byte) decomposition as a final token, which grows
nothing.

A token emitted while the dictionary holds S phrases costs
ceil(log2(S)) + 8 bits: just enough to name any current phrase, plus
the literal byte. ceil(log2(1)) counts as 0. The bit size is an exact
accounting of this scheme, not the length of any produced bitstream.
"""

from __future__ import annotations

from dataclasses import dataclass


def ceil_log2(n: int) -> int:
    """Smallest k with 2**k >= n, for n >= 1."""
    if n < 1:
        raise ValueError(f"ceil_log2 needs n >= 1, got {n}")
    return (n - 1).bit_length()


@dataclass(frozen=True)
class CompressedBlob:
    """Token stream plus its total cost under the bit model."""

    tokens: tuple[tuple[int, int], ...]
    bit_size: int


def lz_compress(data: bytes) -> CompressedBlob:
    """Encodes data as LZ78 tokens and totals their bit cost.

    Args:
        data: any byte string, empty allowed.

    Returns:
        CompressedBlob whose tokens decode back to data exactly.
    """
    children: dict[tuple[int, int], int] = {}
    tokens: list[tuple[int, int]] = []
    bit_size = 0
    dict_size = 1  # the empty phrase
    node = 0
    pending = (0, 0)  # (parent, byte) decomposition of the current node
    for b in data:
        child = children.get((node, b))
        if child is None:
            tokens.append((node, b))
            bit_size += ceil_log2(dict_size) + 8
            children[(node, b)] = dict_size
            dict_size += 1
            node = 0
        else:
            pending = (node, b)
            node = child
    if node != 0:
        # Input ended mid-phrase: name the phrase we were inside.
        tokens.append(pending)
        bit_size += ceil_log2(dict_size) + 8
    return CompressedBlob(tokens=tuple(tokens), bit_size=bit_size)


def lz_decompress(blob: CompressedBlob) -> bytes:
    """Reconstructs the original bytes from a token stream.

    Raises:
        ValueError: if a token names a phrase index not yet defined or
            carries an out-of-range byte.
    """
    phrases: list[bytes] = [b""]
    out: list[bytes] = []
    for index, byte in blob.tokens:
        if not 0 <= index < len(phrases):
            raise ValueError(f"token references undefined phrase {index}")
        if not 0 <= byte <= 255:
            raise ValueError(f"token byte {byte} outside [0, 255]")
        phrase = phrases[index] + bytes([byte])
        out.append(phrase)
        phrases.append(phrase)
    return b"".join(out)


def format_tokens(blob: CompressedBlob) -> str:
    """Debug dump: one token per line as 'index byte-hex'."""
    return "".join(f"{index} {byte:02x}\n" for index, byte in blob.tokens)
