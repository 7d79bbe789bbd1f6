/**
 * Display formatting for wire values.
 *
 * The API's JSON encodings are shown verbatim; the only dressing applied is
 * braces around sets and the maplet arrow inside maps, mirroring how the
 * model source itself writes them.
 */

import type { Value } from "./api.js";

function isPair(v: Value): v is Value[] {
  return Array.isArray(v) && v.length === 2 && !Array.isArray(v[0]);
}

function isMapEncoding(values: Value[]): boolean {
  return values.length > 0 && values.every(isPair);
}

/** Render one wire value: scalars as-is, sets {a, b}, maps {k ↦ v}. */
export function formatValue(v: Value): string {
  if (typeof v === "boolean") return v ? "TRUE" : "FALSE";
  if (typeof v === "number") return String(v);
  if (typeof v === "string") return v;
  if (isMapEncoding(v)) {
    const entries = (v as Value[][]).map(
      ([key, value]) => `${formatValue(key!)} ↦ ${formatValue(value!)}`,
    );
    return `{${entries.join(", ")}}`;
  }
  return `{${v.map(formatValue).join(", ")}}`;
}

/** Render an offer's parameter valuation as `a=this, b=3`. */
export function formatParams(params: Record<string, Value>): string {
  const parts = Object.entries(params).map(([name, v]) => `${name}=${formatValue(v)}`);
  return parts.join(", ");
}
