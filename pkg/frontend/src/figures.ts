import * as fs from "fs";
import * as path from "path";

import { HistSeries, IoError, RocSeries, parseHistCsv, parseRocCsv } from "./csv.js";
import {
    HEIGHT,
    MARGIN,
    PALETTE,
    SvgBuilder,
    WIDTH,
    drawAxes,
    drawLegend,
    linearScale,
    niceTicks,
} from "./svg.js";

export interface SeriesInput {
    path: string;
    label: string;
}

export interface FigureSpec {
    kind: "hist" | "roc";
    inputs: SeriesInput[];
    output: string;
    title?: string;
}

export function rocOverlaySvg(series: RocSeries[], title: string): string {
    const svg = new SvgBuilder();
    const xScale = linearScale(0, 1, MARGIN.left, WIDTH - MARGIN.right);
    const yScale = linearScale(0, 1, HEIGHT - MARGIN.bottom, MARGIN.top);
    const ticks = [0, 0.2, 0.4, 0.6, 0.8, 1];
    drawAxes(svg, xScale, yScale, ticks, ticks, "false positive rate", "true positive rate", title);
    svg.line(xScale(0), yScale(0), xScale(1), yScale(1), "#999", 'stroke-dasharray="5,4"');
    const legend: Array<{ label: string; color: string }> = [];
    series.forEach((s, i) => {
        const color = PALETTE[i % PALETTE.length];
        svg.polyline(
            s.points.map((p) => [xScale(p.fpr), yScale(p.tpr)] as [number, number]),
            color
        );
        // Legend AUC comes straight from the CSV comment row.
        legend.push({ label: `${s.label} (AUC=${s.auc.toFixed(2)})`, color });
    });
    drawLegend(svg, legend);
    return svg.render();
}

export function histogramOverlaySvg(series: HistSeries[], title: string): string {
    const svg = new SvgBuilder();
    const widths = series.map((s) =>
        s.bins.length > 1 ? s.bins[1].left - s.bins[0].left : 1
    );
    const lo = Math.min(...series.map((s) => s.bins[0].left));
    const hi = Math.max(...series.map((s, i) => s.bins[s.bins.length - 1].left + widths[i]));
    const maxCount = Math.max(...series.flatMap((s) => s.bins.map((b) => b.count)));
    const xScale = linearScale(lo, hi, MARGIN.left, WIDTH - MARGIN.right);
    const yScale = linearScale(0, maxCount * 1.05, HEIGHT - MARGIN.bottom, MARGIN.top);
    drawAxes(
        svg,
        xScale,
        yScale,
        niceTicks(lo, hi),
        niceTicks(0, maxCount),
        "statistic",
        "count",
        title
    );
    const legend: Array<{ label: string; color: string }> = [];
    series.forEach((s, i) => {
        const color = PALETTE[i % PALETTE.length];
        const w = widths[i];
        for (const bin of s.bins) {
            if (bin.count === 0) continue;
            const x = xScale(bin.left);
            const y = yScale(bin.count);
            svg.rect(x, y, xScale(bin.left + w) - x, yScale(0) - y, color, 'fill-opacity="0.45"');
        }
        legend.push({ label: s.label, color });
    });
    drawLegend(svg, legend);
    return svg.render();
}

export function render(spec: FigureSpec): void {
    if (spec.inputs.length < 1) {
        throw new Error("at least one input series is required");
    }
    const ext = path.extname(spec.output).toLowerCase();
    if (ext !== ".svg") {
        throw new Error(`unsupported output format '${ext}'; use .svg`);
    }
    let body: string;
    if (spec.kind === "roc") {
        const series = spec.inputs.map((input) => parseRocCsv(input.path, input.label));
        body = rocOverlaySvg(series, spec.title ?? "ROC curves");
    } else {
        const series = spec.inputs.map((input) => parseHistCsv(input.path, input.label));
        body = histogramOverlaySvg(series, spec.title ?? "Statistic histogram");
    }
    try {
        fs.writeFileSync(spec.output, body);
    } catch (err) {
        throw new IoError(`cannot write ${spec.output}: ${(err as Error).message}`);
    }
}
