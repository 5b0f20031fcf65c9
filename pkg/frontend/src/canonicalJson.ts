// Canonical JSON writer, byte-compatible with the service's file format:
// keys sorted by code point, two-space indent, non-ASCII kept raw, and a
// trailing newline. JSON.stringify already matches the escaping rules
// (controls below 0x20 escaped, DEL and U+2028 raw), so only key order
// needs handling.

function compareCodePoints(a: string, b: string): number {
  let i = 0;
  let j = 0;
  while (i < a.length && j < b.length) {
    const ca = a.codePointAt(i) as number;
    const cb = b.codePointAt(j) as number;
    if (ca !== cb) return ca - cb;
    i += ca > 0xffff ? 2 : 1;
    j += cb > 0xffff ? 2 : 1;
  }
  return a.length - i - (b.length - j);
}

export function sortedClone(value: unknown): unknown {
  if (Array.isArray(value)) {
    return value.map(sortedClone);
  }
  if (value !== null && typeof value === "object") {
    const source = value as Record<string, unknown>;
    const out: Record<string, unknown> = {};
    for (const key of Object.keys(source).sort(compareCodePoints)) {
      out[key] = sortedClone(source[key]);
    }
    return out;
  }
  return value;
}

export function canonicalJson(value: unknown): string {
  return JSON.stringify(sortedClone(value), null, 2) + "\n";
}

export function canonicalBytes(value: unknown): Uint8Array {
  return new TextEncoder().encode(canonicalJson(value));
}
