import { describe, expect, it } from "vitest";

import {
  JsonParseError,
  RawNumber,
  asNumber,
  asObject,
  parseRawJson,
} from "../src/rawjson.js";

describe("parseRawJson", () => {
  it("keeps number tokens byte-for-byte", () => {
    const raw = '{"a":0.30000000000000004,"b":1.0,"c":-2e-7,"d":10}';
    const obj = asObject(parseRawJson(raw), "root");
    expect(asNumber(obj.a, "a").raw).toBe("0.30000000000000004");
    expect(asNumber(obj.b, "b").raw).toBe("1.0");
    expect(asNumber(obj.c, "c").raw).toBe("-2e-7");
    expect(asNumber(obj.d, "d").raw).toBe("10");
    expect(asNumber(obj.a, "a").value).toBeCloseTo(0.3, 12);
  });

  it("parses nested structures, strings and literals", () => {
    const value = parseRawJson(
      '{"hits":[{"doc":"d \\"x\\"","ok":true,"none":null,"facets":{"application":0.8825}}],"total":3}',
    ) as { [k: string]: unknown };
    const hits = value.hits as Array<{ [k: string]: unknown }>;
    expect(hits[0].doc).toBe('d "x"');
    expect(hits[0].ok).toBe(true);
    expect(hits[0].none).toBeNull();
    const facets = hits[0].facets as { [k: string]: RawNumber };
    expect(facets.application.raw).toBe("0.8825");
    expect((value.total as RawNumber).raw).toBe("3");
  });

  it("survives unicode and whitespace", () => {
    const value = asObject(parseRawJson('  {  "läbel" : "Größe"  }  '), "root");
    expect(value["läbel"]).toBe("Größe");
  });

  it("rejects malformed documents", () => {
    for (const bad of ["{", '{"a":}', "[1,]", '"open', "01", ""]) {
      expect(() => parseRawJson(bad)).toThrow(JsonParseError);
    }
  });

  it("re-serializing the numeric value loses nothing the raw string keeps", () => {
    // the motivating case: JS would print 1 for 1.0
    const obj = asObject(parseRawJson('{"score":1.0}'), "root");
    const score = asNumber(obj.score, "score");
    expect(String(score.value)).toBe("1");
    expect(score.raw).toBe("1.0");
  });
});
