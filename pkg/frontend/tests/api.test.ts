import { describe, expect, it } from "vitest";
import { Api, ApiError, LatestWins, SUPERSEDED, type FetchFn } from "../src/api.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

describe("Api", () => {
  it("unwraps JSON bodies", async () => {
    const api = new Api("http://x", async () => jsonResponse({ methods: ["irv"] }));
    const info = await api.methods();
    expect(info.methods).toEqual(["irv"]);
  });

  it("surfaces the server's error text", async () => {
    const api = new Api("http://x", async () =>
      jsonResponse({ error: "ballot 'b' ranks unknown candidate 'Z'" }, 400),
    );
    await expect(api.tally({ ballots: [] })).rejects.toThrowError(
      "ballot 'b' ranks unknown candidate 'Z'",
    );
    await expect(api.tally({ ballots: [] })).rejects.toBeInstanceOf(ApiError);
  });

  it("falls back to the status line for non-JSON errors", async () => {
    const api = new Api(
      "http://x",
      async () => new Response("boom", { status: 500, statusText: "Internal Server Error" }),
    );
    await expect(api.election()).rejects.toThrowError("500 Internal Server Error");
  });

  it("posts the request body and path", async () => {
    let seenUrl = "";
    let seenBody = "";
    const fetchFn: FetchFn = async (url, init) => {
      seenUrl = String(url);
      seenBody = String(init?.body);
      return jsonResponse({ id: "b", kind: "ranked", ranking: ["A"] });
    };
    const api = new Api("http://host:1", fetchFn);
    await api.normalize({ ballot: { id: "b", ranking: ["A"] } });
    expect(seenUrl).toBe("http://host:1/normalize");
    expect(JSON.parse(seenBody)).toEqual({ ballot: { id: "b", ranking: ["A"] } });
  });
});

describe("LatestWins", () => {
  it("aborts the earlier request when a newer one starts", async () => {
    const seq = new LatestWins();
    const aborted: string[] = [];
    const first = seq.run(
      (signal) =>
        new Promise<string>((resolve, reject) => {
          signal.addEventListener("abort", () => {
            aborted.push("first");
            reject(new DOMException("aborted", "AbortError"));
          });
        }),
    );
    const second = seq.run(async () => "second");
    expect(await second).toBe("second");
    expect(await first).toBe(SUPERSEDED);
    expect(aborted).toEqual(["first"]);
  });

  it("marks a stale result superseded even if its promise resolves", async () => {
    const seq = new LatestWins();
    let releaseFirst!: (v: string) => void;
    const first = seq.run((signal) => {
      void signal;
      return new Promise<string>((resolve) => {
        releaseFirst = resolve;
      });
    });
    const second = seq.run(async () => "fresh");
    releaseFirst("stale");
    expect(await first).toBe(SUPERSEDED);
    expect(await second).toBe("fresh");
  });

  it("propagates real failures from the current request", async () => {
    const seq = new LatestWins();
    await expect(
      seq.run(async () => {
        throw new ApiError("nope", 400);
      }),
    ).rejects.toThrowError("nope");
  });

  it("cancel aborts without replacement", async () => {
    const seq = new LatestWins();
    const pending = seq.run(
      (signal) =>
        new Promise<string>((resolve, reject) => {
          signal.addEventListener("abort", () => reject(new DOMException("x", "AbortError")));
        }),
    );
    seq.cancel();
    expect(await pending).toBe(SUPERSEDED);
  });
});
