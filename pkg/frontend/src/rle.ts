// Row-major run-length decoding of the snapshot "state:count" tokens.

export function decodeStates(
  rle: string,
  width: number,
  height: number,
): Uint8Array {
  const cells = new Uint8Array(width * height);
  let pos = 0;
  for (const token of rle.split(/\s+/).filter((t) => t.length)) {
    const parts = token.split(":");
    if (parts.length !== 2) throw new Error(`bad RLE token ${token}`);
    const state = Number(parts[0]);
    const count = Number(parts[1]);
    if (!(state === 0 || state === 1) || !Number.isInteger(count) || count < 1) {
      throw new Error(`bad RLE token ${token}`);
    }
    if (pos + count > cells.length) {
      throw new Error(`RLE overflows lattice at cell ${pos}`);
    }
    cells.fill(state, pos, pos + count);
    pos += count;
  }
  if (pos !== cells.length) {
    throw new Error(`RLE covers ${pos} cells, lattice has ${cells.length}`);
  }
  return cells;
}
