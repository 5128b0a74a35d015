#!/usr/bin/env node
/**
 * render --kind <success-omp|success-bp|eigen> --in <csv> --out <img> [--title ...]
 *
 * Exits 0 on success, 1 on bad arguments or schema mismatch (the offending
 * column is named).
 */
import { SchemaError } from "./csv.js";
import { FigureKind, renderFigure } from "./render.js";

const KINDS: FigureKind[] = ["success-omp", "success-bp", "eigen"];

function parseArgs(argv: string[]): Map<string, string> {
  const out = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 1) {
    const arg = argv[i];
    if (!arg.startsWith("--")) {
      throw new Error(`unexpected argument: ${arg}`);
    }
    const key = arg.slice(2);
    const value = argv[i + 1];
    if (value === undefined) {
      throw new Error(`missing value for --${key}`);
    }
    out.set(key, value);
    i += 1;
  }
  return out;
}

export function main(argv: string[]): number {
  let args: Map<string, string>;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(`render: ${(err as Error).message}`);
    return 1;
  }
  const known = new Set(["kind", "in", "out", "title"]);
  for (const key of args.keys()) {
    if (!known.has(key)) {
      console.error(`render: unknown flag --${key}`);
      return 1;
    }
  }
  const kind = args.get("kind");
  const input = args.get("in");
  const output = args.get("out");
  if (!kind || !input || !output) {
    console.error("render: --kind, --in and --out are required");
    return 1;
  }
  if (!KINDS.includes(kind as FigureKind)) {
    console.error(`render: unknown kind ${kind}; expected one of ${KINDS.join(", ")}`);
    return 1;
  }
  try {
    renderFigure({ kind: kind as FigureKind, input, output, title: args.get("title") });
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`render: schema mismatch: ${err.message}`);
    } else {
      console.error(`render: ${(err as Error).message}`);
    }
    return 1;
  }
  return 0;
}

const invokedDirectly = process.argv[1]?.endsWith("cli.js") ?? false;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
