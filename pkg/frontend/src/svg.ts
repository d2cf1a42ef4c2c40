// Minimal deterministic SVG assembly: no timestamps, fixed precision,
// so identical inputs produce byte-identical figures.

export const WIDTH = 640;
export const HEIGHT = 480;
export const MARGIN = { top: 48, right: 24, bottom: 56, left: 64 };

export const PALETTE = [
    "#1f77b4",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
];

export function fmt(x: number): string {
    return Number(x.toFixed(3)).toString();
}

export interface Scale {
    (value: number): number;
}

export function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
    const span = d1 - d0;
    return (value: number) =>
        span === 0 ? (r0 + r1) / 2 : r0 + ((value - d0) / span) * (r1 - r0);
}

export function niceTicks(lo: number, hi: number, count = 5): number[] {
    if (lo === hi) return [lo];
    const raw = (hi - lo) / count;
    const mag = Math.pow(10, Math.floor(Math.log10(raw)));
    const norm = raw / mag;
    const step = (norm >= 5 ? 10 : norm >= 2 ? 5 : norm >= 1 ? 2 : 1) * mag;
    const ticks: number[] = [];
    for (let t = Math.ceil(lo / step) * step; t <= hi + step / 1e6; t += step) {
        ticks.push(Number(t.toFixed(10)));
    }
    return ticks;
}

export class SvgBuilder {
    private parts: string[] = [];

    constructor(width = WIDTH, height = HEIGHT) {
        this.parts.push(
            `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
                `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`
        );
        this.parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
    }

    line(x1: number, y1: number, x2: number, y2: number, stroke: string, extra = ""): void {
        this.parts.push(
            `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ` +
                `stroke="${stroke}" ${extra}/>`
        );
    }

    polyline(points: Array<[number, number]>, stroke: string, extra = ""): void {
        const path = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
        this.parts.push(
            `<polyline points="${path}" fill="none" stroke="${stroke}" stroke-width="1.8" ${extra}/>`
        );
    }

    rect(x: number, y: number, w: number, h: number, fill: string, extra = ""): void {
        this.parts.push(
            `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" ` +
                `fill="${fill}" ${extra}/>`
        );
    }

    text(x: number, y: number, content: string, extra = ""): void {
        const safe = content
            .replace(/&/g, "&amp;")
            .replace(/</g, "&lt;")
            .replace(/>/g, "&gt;");
        this.parts.push(`<text x="${fmt(x)}" y="${fmt(y)}" ${extra}>${safe}</text>`);
    }

    render(): string {
        return this.parts.join("\n") + "\n</svg>\n";
    }
}

export function drawAxes(
    svg: SvgBuilder,
    xScale: Scale,
    yScale: Scale,
    xTicks: number[],
    yTicks: number[],
    xLabel: string,
    yLabel: string,
    title: string
): void {
    const x0 = MARGIN.left;
    const x1 = WIDTH - MARGIN.right;
    const y0 = HEIGHT - MARGIN.bottom;
    const y1 = MARGIN.top;
    svg.line(x0, y0, x1, y0, "#333");
    svg.line(x0, y0, x0, y1, "#333");
    for (const t of xTicks) {
        const x = xScale(t);
        svg.line(x, y0, x, y0 + 5, "#333");
        svg.text(x, y0 + 20, fmt(t), 'text-anchor="middle" font-size="12"');
    }
    for (const t of yTicks) {
        const y = yScale(t);
        svg.line(x0 - 5, y, x0, y, "#333");
        svg.text(x0 - 8, y + 4, fmt(t), 'text-anchor="end" font-size="12"');
    }
    svg.text((x0 + x1) / 2, HEIGHT - 14, xLabel, 'text-anchor="middle" font-size="14"');
    svg.text(
        16,
        (y0 + y1) / 2,
        yLabel,
        `text-anchor="middle" font-size="14" transform="rotate(-90 16 ${fmt((y0 + y1) / 2)})"`
    );
    if (title) {
        svg.text(WIDTH / 2, 24, title, 'text-anchor="middle" font-size="16" font-weight="bold"');
    }
}

export function drawLegend(svg: SvgBuilder, entries: Array<{ label: string; color: string }>): void {
    const x = WIDTH - MARGIN.right - 200;
    let y = MARGIN.top + 12;
    for (const { label, color } of entries) {
        svg.rect(x, y - 9, 14, 10, color);
        svg.text(x + 20, y, label, 'font-size="12"');
        y += 18;
    }
}
