/*
 * rawjson.ts
 *
 * JSON parser that keeps every number as its original character
 * sequence. The console must display scores exactly as the API
 * serialized them; JSON.parse would round-trip numbers through a JS
 * double and reformat them, so we parse ourselves and carry the raw
 * token alongside the numeric value.
 */

export class RawNumber {
  constructor(readonly raw: string) {}

  get value(): number {
    return Number(this.raw);
  }
}

export type RawValue =
  | string
  | boolean
  | null
  | RawNumber
  | RawValue[]
  | { [key: string]: RawValue };

export class JsonParseError extends Error {
  constructor(message: string, readonly position: number) {
    super(`${message} at position ${position}`);
  }
}

const NUMBER_RE = /^-?(?:0|[1-9][0-9]*)(?:\.[0-9]+)?(?:[eE][+-]?[0-9]+)?/;
const WHITESPACE = new Set([" ", "\t", "\n", "\r"]);

class Parser {
  private pos = 0;

  constructor(private readonly text: string) {}

  parse(): RawValue {
    const value = this.value();
    this.skipWhitespace();
    if (this.pos !== this.text.length) {
      throw new JsonParseError("trailing characters", this.pos);
    }
    return value;
  }

  private skipWhitespace(): void {
    while (this.pos < this.text.length && WHITESPACE.has(this.text[this.pos])) {
      this.pos += 1;
    }
  }

  private value(): RawValue {
    this.skipWhitespace();
    const ch = this.text[this.pos];
    if (ch === undefined) throw new JsonParseError("unexpected end of input", this.pos);
    if (ch === "{") return this.object();
    if (ch === "[") return this.array();
    if (ch === '"') return this.string();
    if (ch === "t" || ch === "f") return this.boolean();
    if (ch === "n") return this.nullLiteral();
    return this.number();
  }

  private expect(token: string): void {
    if (!this.text.startsWith(token, this.pos)) {
      throw new JsonParseError(`expected ${token}`, this.pos);
    }
    this.pos += token.length;
  }

  private object(): { [key: string]: RawValue } {
    const out: { [key: string]: RawValue } = {};
    this.expect("{");
    this.skipWhitespace();
    if (this.text[this.pos] === "}") {
      this.pos += 1;
      return out;
    }
    for (;;) {
      this.skipWhitespace();
      const key = this.string();
      this.skipWhitespace();
      this.expect(":");
      out[key] = this.value();
      this.skipWhitespace();
      if (this.text[this.pos] === ",") {
        this.pos += 1;
        continue;
      }
      this.expect("}");
      return out;
    }
  }

  private array(): RawValue[] {
    const out: RawValue[] = [];
    this.expect("[");
    this.skipWhitespace();
    if (this.text[this.pos] === "]") {
      this.pos += 1;
      return out;
    }
    for (;;) {
      out.push(this.value());
      this.skipWhitespace();
      if (this.text[this.pos] === ",") {
        this.pos += 1;
        continue;
      }
      this.expect("]");
      return out;
    }
  }

  private string(): string {
    if (this.text[this.pos] !== '"') throw new JsonParseError("expected string", this.pos);
    const start = this.pos;
    this.pos += 1;
    while (this.pos < this.text.length) {
      const ch = this.text[this.pos];
      if (ch === "\\") {
        this.pos += 2;
        continue;
      }
      if (ch === '"') {
        this.pos += 1;
        // Delegate escape handling to the built-in parser.
        return JSON.parse(this.text.slice(start, this.pos)) as string;
      }
      this.pos += 1;
    }
    throw new JsonParseError("unterminated string", start);
  }

  private boolean(): boolean {
    if (this.text.startsWith("true", this.pos)) {
      this.pos += 4;
      return true;
    }
    this.expect("false");
    return false;
  }

  private nullLiteral(): null {
    this.expect("null");
    return null;
  }

  private number(): RawNumber {
    const match = NUMBER_RE.exec(this.text.slice(this.pos));
    if (!match) throw new JsonParseError("invalid value", this.pos);
    this.pos += match[0].length;
    return new RawNumber(match[0]);
  }
}

export function parseRawJson(text: string): RawValue {
  return new Parser(text).parse();
}

/** Narrowing helpers: API payloads have known shapes, fail loudly otherwise. */
export function asObject(value: RawValue, context: string): { [key: string]: RawValue } {
  if (value === null || typeof value !== "object" || Array.isArray(value) || value instanceof RawNumber) {
    throw new Error(`expected object for ${context}`);
  }
  return value;
}

export function asArray(value: RawValue, context: string): RawValue[] {
  if (!Array.isArray(value)) throw new Error(`expected array for ${context}`);
  return value;
}

export function asString(value: RawValue, context: string): string {
  if (typeof value !== "string") throw new Error(`expected string for ${context}`);
  return value;
}

export function asNumber(value: RawValue, context: string): RawNumber {
  if (!(value instanceof RawNumber)) throw new Error(`expected number for ${context}`);
  return value;
}

export function asBoolean(value: RawValue, context: string): boolean {
  if (typeof value !== "boolean") throw new Error(`expected boolean for ${context}`);
  return value;
}
