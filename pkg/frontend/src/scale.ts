// Tiny scale helpers; enough for fixed-extent audit views.

export interface Scale {
  (value: number): number;
  invert(px: number): number;
}

export function linearScale(
  domain: [number, number],
  range: [number, number],
): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  fn.invert = (px: number) => d0 + ((px - r0) / (r1 - r0 || 1)) * span;
  return fn;
}

export function sqrtScale(maxValue: number, maxRadius: number): (v: number) => number {
  const denom = Math.sqrt(Math.max(maxValue, 1));
  return (v: number) => (Math.sqrt(Math.max(v, 0)) / denom) * maxRadius;
}
