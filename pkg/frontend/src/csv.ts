/**
 * CSV loading and schema validation for the experiment outputs.
 *
 * Two schemas are understood:
 *   success: model,decoder,M,trials,successes,rate,mean_runtime_ms
 *   eigen:   model,M,samples,mean_lambda_min,mean_lambda_max
 */
import { readFileSync } from "node:fs";

export interface SuccessRow {
  model: string;
  decoder: string;
  m: number;
  trials: number;
  successes: number;
  rate: number;
}

export interface EigenRow {
  model: string;
  m: number;
  samples: number;
  meanLambdaMin: number;
  meanLambdaMax: number;
}

export class SchemaError extends Error {}

function splitLine(line: string): string[] {
  return line.split(",").map((cell) => cell.trim());
}

function parseTable(text: string): { header: string[]; rows: string[][] } {
  const lines = text
    .split(/\r?\n/)
    .map((l) => l.trim())
    .filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new SchemaError("empty CSV");
  }
  const header = splitLine(lines[0]);
  const rows = lines.slice(1).map(splitLine);
  return { header, rows };
}

function columnIndex(header: string[], name: string): number {
  const idx = header.indexOf(name);
  if (idx < 0) {
    throw new SchemaError(`missing column: ${name}`);
  }
  return idx;
}

function toNumber(cell: string, column: string, line: number): number {
  const value = Number(cell);
  if (cell === "" || Number.isNaN(value)) {
    throw new SchemaError(`row ${line}: column ${column} is not a number: ${cell}`);
  }
  return value;
}

export function readSuccessCsv(path: string): SuccessRow[] {
  const { header, rows } = parseTable(readFileSync(path, "utf8"));
  const model = columnIndex(header, "model");
  const decoder = columnIndex(header, "decoder");
  const m = columnIndex(header, "M");
  const trials = columnIndex(header, "trials");
  const successes = columnIndex(header, "successes");
  const rate = columnIndex(header, "rate");
  return rows.map((cells, i) => ({
    model: cells[model],
    decoder: cells[decoder],
    m: toNumber(cells[m], "M", i + 2),
    trials: toNumber(cells[trials], "trials", i + 2),
    successes: toNumber(cells[successes], "successes", i + 2),
    rate: toNumber(cells[rate], "rate", i + 2),
  }));
}

export function readEigenCsv(path: string): EigenRow[] {
  const { header, rows } = parseTable(readFileSync(path, "utf8"));
  const model = columnIndex(header, "model");
  const m = columnIndex(header, "M");
  const samples = columnIndex(header, "samples");
  const lmin = columnIndex(header, "mean_lambda_min");
  const lmax = columnIndex(header, "mean_lambda_max");
  return rows.map((cells, i) => ({
    model: cells[model],
    m: toNumber(cells[m], "M", i + 2),
    samples: toNumber(cells[samples], "samples", i + 2),
    meanLambdaMin: toNumber(cells[lmin], "mean_lambda_min", i + 2),
    meanLambdaMax: toNumber(cells[lmax], "mean_lambda_max", i + 2),
  }));
}
