#!/usr/bin/env node
// plot --kind {hist|roc} --in PATH[:LABEL] ... --out PATH [--title TEXT]
//
// Exit codes mirror the producing toolkit: 0 success, 2 bad usage,
// 4 missing files or schema mismatches.

import * as path from "path";

import { IoError, SchemaError } from "./csv.js";
import { FigureSpec, SeriesInput, render } from "./figures.js";

const USAGE =
    "usage: plot --kind {hist|roc} --in PATH[:LABEL] [--in PATH[:LABEL] ...] " +
    "--out PATH [--title TEXT]";

function parseSeries(arg: string): SeriesInput {
    const sep = arg.lastIndexOf(":");
    if (sep > 0 && sep < arg.length - 1) {
        return { path: arg.slice(0, sep), label: arg.slice(sep + 1) };
    }
    return { path: arg, label: path.basename(arg).replace(/\.[^.]*$/, "") };
}

export function parseArgs(argv: string[]): FigureSpec {
    let kind: "hist" | "roc" | null = null;
    const inputs: SeriesInput[] = [];
    let output: string | null = null;
    let title: string | undefined;
    for (let i = 0; i < argv.length; i++) {
        const flag = argv[i];
        const value = argv[i + 1];
        switch (flag) {
            case "--kind":
                if (value !== "hist" && value !== "roc") {
                    throw new UsageError(`--kind must be 'hist' or 'roc', got '${value}'`);
                }
                kind = value;
                i++;
                break;
            case "--in":
                if (value === undefined) throw new UsageError("--in needs a value");
                inputs.push(parseSeries(value));
                i++;
                break;
            case "--out":
                if (value === undefined) throw new UsageError("--out needs a value");
                output = value;
                i++;
                break;
            case "--title":
                if (value === undefined) throw new UsageError("--title needs a value");
                title = value;
                i++;
                break;
            default:
                throw new UsageError(`unknown argument '${flag}'`);
        }
    }
    if (kind === null || output === null || inputs.length === 0) {
        throw new UsageError(USAGE);
    }
    return { kind, inputs, output, title };
}

export class UsageError extends Error {}

export function main(argv: string[]): number {
    try {
        const spec = parseArgs(argv);
        render(spec);
        console.log(`wrote ${spec.output}`);
        return 0;
    } catch (err) {
        if (err instanceof UsageError) {
            console.error(`error: ${err.message}`);
            return 2;
        }
        if (err instanceof SchemaError || err instanceof IoError) {
            console.error(`error: ${err.message}`);
            return 4;
        }
        console.error(`error: ${(err as Error).message}`);
        return 2;
    }
}

const invokedDirectly =
    process.argv[1] !== undefined &&
    import.meta.url.endsWith(path.basename(process.argv[1]));
if (invokedDirectly) {
    process.exit(main(process.argv.slice(2)));
}
