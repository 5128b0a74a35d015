/**
 * Figure assembly: one chart per kind.
 *
 *   success-omp / success-bp: success rate vs sparsity, one line per
 *   sampling model, restricted to the requested decoder's rows;
 *   eigen: mean extreme Gram eigenvalues vs sparsity, a solid/dashed line
 *   pair per model.
 */
import { writeFileSync } from "node:fs";

import { EigenRow, SchemaError, SuccessRow, readEigenCsv, readSuccessCsv } from "./csv.js";
import { ChartSpec, PALETTE, Series, dataExtent, padExtent, renderChart } from "./svg.js";

export type FigureKind = "success-omp" | "success-bp" | "eigen";

export interface PlotSpec {
  input: string;
  kind: FigureKind;
  output: string;
  title?: string;
}

function uniqueInOrder(values: string[]): string[] {
  return [...new Set(values)];
}

function byM<T extends { m: number }>(rows: T[]): T[] {
  return [...rows].sort((a, b) => a.m - b.m);
}

function successChart(rows: SuccessRow[], decoder: string, title?: string): ChartSpec {
  const relevant = rows.filter((r) => r.decoder === decoder);
  if (relevant.length === 0) {
    throw new SchemaError(`no rows for decoder ${decoder}`);
  }
  const models = uniqueInOrder(relevant.map((r) => r.model));
  const series: Series[] = models.map((model, i) => ({
    label: model,
    color: PALETTE[i % PALETTE.length],
    points: byM(relevant.filter((r) => r.model === model)).map(
      (r) => [r.m, r.rate] as [number, number],
    ),
  }));
  return {
    title: title ?? `Success rate (${decoder})`,
    xLabel: "sparsity M",
    yLabel: "success rate",
    xExtent: padExtent(dataExtent(relevant.map((r) => r.m))),
    yExtent: { min: -0.02, max: 1.05 },
    series,
  };
}

function eigenChart(rows: EigenRow[], title?: string): ChartSpec {
  if (rows.length === 0) {
    throw new SchemaError("no data rows");
  }
  const models = uniqueInOrder(rows.map((r) => r.model));
  const series: Series[] = [];
  models.forEach((model, i) => {
    const mine = byM(rows.filter((r) => r.model === model));
    series.push({
      label: `${model} max`,
      color: PALETTE[i % PALETTE.length],
      points: mine.map((r) => [r.m, r.meanLambdaMax] as [number, number]),
    });
    series.push({
      label: `${model} min`,
      color: PALETTE[i % PALETTE.length],
      dashed: true,
      points: mine.map((r) => [r.m, r.meanLambdaMin] as [number, number]),
    });
  });
  const values = rows.flatMap((r) => [r.meanLambdaMin, r.meanLambdaMax]);
  return {
    title: title ?? "Mean extreme Gram eigenvalues",
    xLabel: "sparsity M",
    yLabel: "mean eigenvalue",
    xExtent: padExtent(dataExtent(rows.map((r) => r.m))),
    yExtent: padExtent(dataExtent(values)),
    series,
  };
}

export function renderFigure(spec: PlotSpec): string {
  let chart: ChartSpec;
  switch (spec.kind) {
    case "success-omp":
      chart = successChart(readSuccessCsv(spec.input), "omp", spec.title);
      break;
    case "success-bp":
      chart = successChart(readSuccessCsv(spec.input), "bp", spec.title);
      break;
    case "eigen":
      chart = eigenChart(readEigenCsv(spec.input), spec.title);
      break;
    default:
      throw new SchemaError(`unknown figure kind: ${String(spec.kind)}`);
  }
  const svg = renderChart(chart);
  writeFileSync(spec.output, svg, "utf8");
  return svg;
}
