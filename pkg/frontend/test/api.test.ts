import { createServer, type Server } from "node:http";
import type { AddressInfo } from "node:net";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiError, Client } from "../src/api.js";
import type { Project } from "../src/types.js";

interface Recorded {
  method: string;
  url: string;
  contentType: string | undefined;
  body: unknown;
}

interface Canned {
  status?: number;
  body: unknown;
}

const PROJECT: Project = {
  version: "1",
  name: "demo",
  lexicon: {
    version: "1",
    categories: ["Name_of_Place"],
    stems: [{ form: "dby", glosses: ["Dubai"], categories: ["Name_of_Place"] }],
    prefixes: [],
    suffixes: [],
  },
  tagTypes: [{ label: "P", formula: { terms: [{ feature: "category", predicate: "isA", value: "Name_of_Place" }] } }],
};

let server: Server;
let client: Client;
const requests: Recorded[] = [];
const responses = new Map<string, Canned>();

beforeAll(async () => {
  server = createServer((req, res) => {
    const chunks: Buffer[] = [];
    req.on("data", (chunk) => chunks.push(chunk));
    req.on("end", () => {
      const raw = Buffer.concat(chunks).toString("utf8");
      requests.push({
        method: req.method ?? "",
        url: req.url ?? "",
        contentType: req.headers["content-type"],
        body: raw ? JSON.parse(raw) : null,
      });
      const canned = responses.get(`${req.method} ${req.url}`) ?? {
        status: 404,
        body: { error: "no route", stage: "load" },
      };
      res.writeHead(canned.status ?? 200, { "Content-Type": "application/json" });
      res.end(JSON.stringify(canned.body));
    });
  });
  await new Promise<void>((resolve) => server.listen(0, "127.0.0.1", resolve));
  const { port } = server.address() as AddressInfo;
  client = new Client(`http://127.0.0.1:${port}`);
});

afterAll(async () => {
  await new Promise<void>((resolve, reject) =>
    server.close((err) => (err ? reject(err) : resolve())),
  );
});

function lastRequest(): Recorded {
  const last = requests[requests.length - 1];
  if (!last) throw new Error("no request recorded");
  return last;
}

describe("client requests", () => {
  it("fetches the project with GET and no body", async () => {
    responses.set("GET /project", { body: PROJECT });
    const project = await client.getProject();
    expect(project).toEqual(PROJECT);
    const req = lastRequest();
    expect(req.method).toBe("GET");
    expect(req.url).toBe("/project");
    expect(req.body).toBeNull();
  });

  it("stores the project with PUT and a JSON body", async () => {
    responses.set("PUT /project", { body: PROJECT });
    await client.putProject(PROJECT);
    const req = lastRequest();
    expect(req.method).toBe("PUT");
    expect(req.url).toBe("/project");
    expect(req.contentType).toBe("application/json");
    expect(req.body).toEqual(PROJECT);
  });

  it("posts text to the analyzer", async () => {
    responses.set("POST /analyze", { body: { solutions: [] } });
    const result = await client.analyze("dby");
    expect(result).toEqual({ solutions: [] });
    expect(lastRequest().body).toEqual({ text: "dby" });
  });

  it("posts text to the tagger", async () => {
    responses.set("POST /simulate/mbf", {
      body: { words: [], perWord: [] },
    });
    await client.simulateMbf("dby");
    const req = lastRequest();
    expect(req.url).toBe("/simulate/mbf");
    expect(req.body).toEqual({ text: "dby" });
  });

  it("passes the step budget through to the rule engine", async () => {
    responses.set("POST /simulate/mre", {
      body: { version: "1", document: { sha256: "", length: 3 }, tags: [], matches: [] },
    });
    await client.simulateMre("dby");
    expect(lastRequest().body).toEqual({ text: "dby" });
    await client.simulateMre("dby", { maxSteps: 500 });
    expect(lastRequest().body).toEqual({ text: "dby", maxSteps: 500 });
  });

  it("runs actions and relation extraction on the same body shape", async () => {
    responses.set("POST /actions/run", {
      body: { annotations: [], printed: [], variables: {} },
    });
    await client.runActions("dby", { maxSteps: 9 });
    expect(lastRequest().url).toBe("/actions/run");
    expect(lastRequest().body).toEqual({ text: "dby", maxSteps: 9 });

    responses.set("POST /extract/relations", {
      body: { version: "1", nodes: [], edges: [] },
    });
    const graph = await client.extractRelations("dby");
    expect(graph.nodes).toEqual([]);
    expect(lastRequest().url).toBe("/extract/relations");
    expect(lastRequest().body).toEqual({ text: "dby" });
  });

  it("compares tag files with an explicit predicate", async () => {
    responses.set("POST /diff", { body: { predicate: "exact", labels: {} } });
    const a = [{ index: 0, length: 3, label: "P" }];
    const b = [{ index: 0, length: 3, label: "N" }];
    await client.diff(a, b);
    expect(lastRequest().body).toEqual({ a, b, predicate: "exact" });
    await client.diff(a, b, "intersection");
    expect(lastRequest().body).toEqual({ a, b, predicate: "intersection" });
  });
});

describe("service errors", () => {
  it("surfaces the error message, stage, and status", async () => {
    responses.set("POST /simulate/mre", {
      status: 400,
      body: { error: "rule 3: expected ';'", stage: "rules" },
    });
    const failure = await client.simulateMre("x").catch((e: unknown) => e);
    expect(failure).toBeInstanceOf(ApiError);
    const apiError = failure as ApiError;
    expect(apiError.message).toBe("rule 3: expected ';'");
    expect(apiError.stage).toBe("rules");
    expect(apiError.status).toBe(400);
  });

  it("labels unknown routes with a default stage", async () => {
    responses.delete("POST /analyze");
    const failure: unknown = await client.analyze("x").catch((e: unknown) => e);
    expect(failure).toBeInstanceOf(ApiError);
    const apiError = failure as ApiError;
    expect(apiError.message).toBe("no route");
    expect(apiError.status).toBe(404);
    expect(apiError.stage).toBe("load");
  });
});
