import { describe, expect, it } from "vitest";
import { EMPTY_READOUT, fmtAmount, fmtHeight, fmtShare } from "../src/format.js";

describe("fmtAmount", () => {
  it("shows rationals verbatim with a 4-decimal approximation", () => {
    expect(fmtAmount("2/3", 0.666666666667)).toBe("2/3 (0.6667)");
    expect(fmtAmount("1/3", 0.333333333333)).toBe("1/3 (0.3333)");
  });

  it("keeps integral rationals in n/d form", () => {
    expect(fmtAmount("5/1", 5.0)).toBe("5/1 (5.0000)");
  });

  it("passes square-root amounts through unchanged", () => {
    expect(fmtAmount("3.81720680758", 3.81720680758)).toBe("3.81720680758");
  });

  it("omits the approximation when no decimal is given", () => {
    expect(fmtAmount("8/3", null)).toBe("8/3");
  });
});

describe("fmtHeight", () => {
  it("rounds balloon heights to three decimals", () => {
    expect(fmtHeight(2.2360679774997896)).toBe("2.236");
    expect(fmtHeight(0.7071067811865476)).toBe("0.707");
  });
});

describe("fmtShare", () => {
  it("matches fmtAmount for rational shares", () => {
    expect(fmtShare("2/3", 0.666666666667)).toBe(fmtAmount("2/3", 0.666666666667));
  });
});

it("uses a dash placeholder for empty readouts", () => {
  expect(EMPTY_READOUT).toBe("—");
});
