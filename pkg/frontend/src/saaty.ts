/**
 * The 1-9 reciprocal comparison scale behind the judgment slider.
 *
 * A slider position is an integer 0..16; position 8 is "equal". Positions
 * map onto exactly the 17 legal scale values, so the grid can never submit
 * anything else.
 */

export const SAATY_VALUES: readonly number[] = [
  1 / 9, 1 / 8, 1 / 7, 1 / 6, 1 / 5, 1 / 4, 1 / 3, 1 / 2,
  1,
  2, 3, 4, 5, 6, 7, 8, 9,
];

export const EQUAL_POSITION = 8;
export const POSITION_COUNT = SAATY_VALUES.length;

const ANCHORS: Record<number, string> = {
  1: 'equal',
  3: 'moderate',
  5: 'strong',
  7: 'very strong',
  9: 'extreme',
};

export function ratioForPosition(position: number): number {
  const index = Math.min(Math.max(Math.round(position), 0), POSITION_COUNT - 1);
  return SAATY_VALUES[index]!;
}

export function positionForRatio(ratio: number): number {
  let best = EQUAL_POSITION;
  let bestDistance = Infinity;
  SAATY_VALUES.forEach((value, index) => {
    const distance = Math.abs(Math.log(ratio) - Math.log(value));
    if (distance < bestDistance) {
      bestDistance = distance;
      best = index;
    }
  });
  return best;
}

export function isLegalRatio(ratio: number): boolean {
  return SAATY_VALUES.some((value) => Math.abs(value - ratio) < 1e-12);
}

/** Verbal label for a slider position, e.g. "left is strongly preferred". */
export function anchorLabel(position: number, left: string, right: string): string {
  const ratio = ratioForPosition(position);
  if (ratio === 1) return `${left} and ${right} are equal`;
  const magnitude = ratio > 1 ? ratio : 1 / ratio;
  const winner = ratio > 1 ? left : right;
  const word = ANCHORS[magnitude] ?? `${magnitude}x`;
  return `${winner}: ${word} preference`;
}
