// Diverging color scale over the signed risk difference.
// Hue names the discriminated group (positive rd favors the protected
// group, i.e. discrimination towards the non-protected one); saturation
// carries |rd| clamped to [0, 1].

export const HUE_NONPROTECTED_DISCRIMINATED = 28; // orange, rd > 0
export const HUE_PROTECTED_DISCRIMINATED = 211; // blue, rd < 0

export function rdColor(rd: number): string {
  const clamped = Math.max(-1, Math.min(1, rd));
  const hue = clamped >= 0 ? HUE_NONPROTECTED_DISCRIMINATED : HUE_PROTECTED_DISCRIMINATED;
  const saturation = Math.round(Math.abs(clamped) * 100);
  return `hsl(${hue}, ${saturation}%, 55%)`;
}

export const BENEFICIAL_BAR = "#1f4e79"; // dark blue
export const NON_BENEFICIAL_BAR = "#9dc3e6"; // light blue
export const RESOLVING_HIGHLIGHT = "#b48204";
