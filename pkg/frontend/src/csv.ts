import * as fs from "fs";

export interface RocPoint {
    fpr: number;
    tpr: number;
}

export interface RocSeries {
    label: string;
    points: RocPoint[];
    auc: number;
}

export interface HistBin {
    left: number;
    count: number;
}

export interface HistSeries {
    label: string;
    bins: HistBin[];
}

export class SchemaError extends Error {}
export class IoError extends Error {}

function readLines(path: string): string[] {
    let text: string;
    try {
        text = fs.readFileSync(path, "utf-8");
    } catch (err) {
        throw new IoError(`cannot read ${path}: ${(err as Error).message}`);
    }
    return text.split(/\r?\n/).filter((line) => line.length > 0);
}

function checkHeader(path: string, got: string, expected: string[]): void {
    const cols = got.split(",").map((c) => c.trim());
    for (let i = 0; i < expected.length; i++) {
        if (cols[i] !== expected[i]) {
            throw new SchemaError(
                `${path}: expected column ${i + 1} to be '${expected[i]}', got '${cols[i] ?? ""}'`
            );
        }
    }
    if (cols.length !== expected.length) {
        throw new SchemaError(
            `${path}: unexpected extra column '${cols[expected.length]}'`
        );
    }
}

// The emitter writes infinities as 'inf'/'-inf'; Number() rejects those.
function parseNumber(path: string, lineno: number, column: string, raw: string): number {
    const t = raw.trim();
    if (t === "inf") return Infinity;
    if (t === "-inf") return -Infinity;
    const value = Number(t);
    if (t === "" || Number.isNaN(value)) {
        throw new SchemaError(`${path}:${lineno}: bad value '${raw}' in column '${column}'`);
    }
    return value;
}

export function parseRocCsv(path: string, label: string): RocSeries {
    const lines = readLines(path);
    if (lines.length === 0) throw new SchemaError(`${path}: empty file`);
    checkHeader(path, lines[0], ["threshold", "fpr", "tpr"]);
    const points: RocPoint[] = [];
    let auc: number | null = null;
    for (let i = 1; i < lines.length; i++) {
        const line = lines[i];
        if (line.startsWith("#")) {
            const match = line.match(/^#\s*auc=([-0-9.eE+]+)\s*$/);
            if (match) auc = Number(match[1]);
            continue;
        }
        const cells = line.split(",");
        if (cells.length !== 3) {
            throw new SchemaError(`${path}:${i + 1}: expected 3 fields, got ${cells.length}`);
        }
        points.push({
            fpr: parseNumber(path, i + 1, "fpr", cells[1]),
            tpr: parseNumber(path, i + 1, "tpr", cells[2]),
        });
    }
    if (auc === null) {
        throw new SchemaError(`${path}: missing '# auc=' comment row`);
    }
    if (points.length === 0) {
        throw new SchemaError(`${path}: no curve points`);
    }
    return { label, points, auc };
}

export function parseHistCsv(path: string, label: string): HistSeries {
    const lines = readLines(path);
    if (lines.length === 0) throw new SchemaError(`${path}: empty file`);
    checkHeader(path, lines[0], ["bin_left", "count"]);
    const bins: HistBin[] = [];
    for (let i = 1; i < lines.length; i++) {
        if (lines[i].startsWith("#")) continue;
        const cells = lines[i].split(",");
        if (cells.length !== 2) {
            throw new SchemaError(`${path}:${i + 1}: expected 2 fields, got ${cells.length}`);
        }
        bins.push({
            left: parseNumber(path, i + 1, "bin_left", cells[0]),
            count: parseNumber(path, i + 1, "count", cells[1]),
        });
    }
    if (bins.length === 0) {
        throw new SchemaError(`${path}: no histogram bins`);
    }
    return { label, bins };
}
