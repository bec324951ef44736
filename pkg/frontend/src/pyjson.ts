/** Render JSON byte-identically to the reference CLI's writer.
 *
 * The native CLI serializes reports with compact separators (", " / ": "),
 * non-ASCII characters kept raw, and floats in shortest round-trip form with
 * a trailing ".0" for integral values. Mirroring that exactly lets the
 * differential tests compare raw bytes instead of parsed values.
 */

export type PyJsonValue =
  | { kind: "int"; value: number }
  | { kind: "float"; value: number }
  | { kind: "str"; value: string }
  | { kind: "null" };

export function pyFloat(x: number): string {
  if (!Number.isFinite(x)) {
    throw new RangeError(`non-finite float ${x}`);
  }
  const abs = Math.abs(x);
  if (Number.isInteger(x) && abs < 1e16) {
    return `${x}.0`;
  }
  if (abs !== 0 && (abs < 1e-4 || abs >= 1e16)) {
    const [rawMantissa, rawExp] = x.toExponential().split("e");
    let mantissa = rawMantissa;
    if (mantissa.includes(".")) {
      mantissa = mantissa.replace(/0+$/u, "").replace(/\.$/u, "");
    }
    const exponent = parseInt(rawExp, 10);
    const sign = exponent < 0 ? "-" : "+";
    return `${mantissa}e${sign}${String(Math.abs(exponent)).padStart(2, "0")}`;
  }
  return String(x);
}

export function pyString(s: string): string {
  let out = '"';
  for (const char of s) {
    const cp = char.codePointAt(0)!;
    if (char === '"') {
      out += '\\"';
    } else if (char === "\\") {
      out += "\\\\";
    } else if (char === "\n") {
      out += "\\n";
    } else if (char === "\t") {
      out += "\\t";
    } else if (char === "\r") {
      out += "\\r";
    } else if (char === "\b") {
      out += "\\b";
    } else if (char === "\f") {
      out += "\\f";
    } else if (cp < 0x20) {
      out += "\\u" + cp.toString(16).padStart(4, "0");
    } else {
      out += char;
    }
  }
  return out + '"';
}

function renderValue(value: PyJsonValue): string {
  switch (value.kind) {
    case "int":
      return String(value.value);
    case "float":
      return pyFloat(value.value);
    case "str":
      return pyString(value.value);
    case "null":
      return "null";
  }
}

/** Ordered object -> one compact JSON line (without trailing newline). */
export function pyJsonObject(entries: ReadonlyArray<[string, PyJsonValue]>): string {
  const body = entries.map(([key, value]) => `${pyString(key)}: ${renderValue(value)}`).join(", ");
  return `{${body}}`;
}
