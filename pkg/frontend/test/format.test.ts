import { describe, expect, test } from "vitest";

import { formatParams, formatValue } from "../src/format.js";

describe("formatValue", () => {
  test("scalars pass through verbatim", () => {
    expect(formatValue(3)).toBe("3");
    expect(formatValue(-1)).toBe("-1");
    expect(formatValue("ADDRESS1")).toBe("ADDRESS1");
    expect(formatValue("this")).toBe("this");
  });

  test("booleans use the model spelling", () => {
    expect(formatValue(true)).toBe("TRUE");
    expect(formatValue(false)).toBe("FALSE");
  });

  test("sets are braced in server order", () => {
    expect(formatValue(["this", "ADDRESS1"])).toBe("{this, ADDRESS1}");
    expect(formatValue([])).toBe("{}");
  });

  test("maps render pair arrays with maplets", () => {
    expect(formatValue([["this", 1], ["ADDRESS1", 3]]))
      .toBe("{this ↦ 1, ADDRESS1 ↦ 3}");
  });

  test("nested values keep the same scheme", () => {
    expect(formatValue([["this", [1, 2]]])).toBe("{this ↦ {1, 2}}");
  });

  test("a set of arrays is not mistaken for a map", () => {
    expect(formatValue([[1, 2, 3]])).toBe("{{1, 2, 3}}");
  });
});

describe("formatParams", () => {
  test("renders name=value pairs", () => {
    expect(formatParams({ a: "ADDRESS1", b: 3 })).toBe("a=ADDRESS1, b=3");
    expect(formatParams({})).toBe("");
  });
});
