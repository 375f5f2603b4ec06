// Display-only formatting. Amount strings from the API are shown verbatim;
// the decimal companion is rounded for the parenthetical approximation.

/** "2/3" + 0.666666666667 -> "2/3 (0.6667)"; float-string amounts stay bare. */
export function fmtAmount(exact: string, decimal: number | null | undefined): string {
  if (exact.includes("/")) {
    const approx = decimal === null || decimal === undefined ? "" : ` (${decimal.toFixed(4)})`;
    return `${exact}${approx}`;
  }
  return exact;
}

/** Balloon height readout, e.g. 2.2360679 -> "2.236". */
export function fmtHeight(x: number): string {
  return x.toFixed(3);
}

/** Share readout for the allocation panel: fraction plus 4-decimal approximation. */
export function fmtShare(exact: string, decimal: number): string {
  return fmtAmount(exact, decimal);
}

export const EMPTY_READOUT = "—";
