// FNV-1a (32-bit) over row-major '0'/'1' bytes, mirroring the engine's
// lattice hash so the client can verify its reconstructed state.

export function latticeHash(states: Uint8Array): string {
  let h = 0x811c9dc5;
  for (let i = 0; i < states.length; i++) {
    h ^= states[i]! ? 0x31 : 0x30;
    h = Math.imul(h, 0x01000193) >>> 0;
  }
  return h.toString(16).padStart(8, "0");
}
