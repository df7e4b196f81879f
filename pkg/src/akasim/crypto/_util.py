from akasim.errors import MalformedInputError


def require_width(name: str, value, nbytes: int) -> bytes:
    if not isinstance(value, (bytes, bytearray)):
        raise MalformedInputError(f"{name} must be bytes, got {type(value).__name__}")
    if len(value) != nbytes:
        raise MalformedInputError(f"{name} must be {nbytes * 8} bits, got {len(value) * 8}")
    return bytes(value)


def xor(a: bytes, b: bytes) -> bytes:
    return bytes(x ^ y for x, y in zip(a, b, strict=True))
