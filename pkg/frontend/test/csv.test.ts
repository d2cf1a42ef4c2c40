import assert from "node:assert/strict";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { test } from "node:test";

import { IoError, SchemaError, parseHistCsv, parseRocCsv } from "../src/csv.js";

function tmpFile(name: string, content: string): string {
    const dir = fs.mkdtempSync(path.join(os.tmpdir(), "plots-"));
    const p = path.join(dir, name);
    fs.writeFileSync(p, content);
    return p;
}

test("roc csv parses points, infinities, and the auc comment", () => {
    const p = tmpFile(
        "roc.csv",
        "threshold,fpr,tpr\ninf,0.0,0.0\n1.25,0.0,1.0\n-inf,1.0,1.0\n# auc=1.0\n"
    );
    const series = parseRocCsv(p, "run");
    assert.equal(series.label, "run");
    assert.equal(series.points.length, 3);
    assert.deepEqual(series.points[1], { fpr: 0.0, tpr: 1.0 });
    assert.equal(series.auc, 1.0);
});

test("roc csv without auc comment is a schema error", () => {
    const p = tmpFile("roc.csv", "threshold,fpr,tpr\ninf,0.0,0.0\n");
    assert.throws(() => parseRocCsv(p, "x"), SchemaError);
});

test("roc csv with wrong header names the offending column", () => {
    const p = tmpFile("roc.csv", "threshold,fraction,tpr\ninf,0,0\n# auc=0.5\n");
    assert.throws(() => parseRocCsv(p, "x"), /column 2.*'fpr'.*'fraction'/);
});

test("roc csv with a bad cell names the column", () => {
    const p = tmpFile("roc.csv", "threshold,fpr,tpr\ninf,zero,0\n# auc=0.5\n");
    assert.throws(() => parseRocCsv(p, "x"), /column 'fpr'/);
});

test("missing file raises an io error", () => {
    assert.throws(() => parseRocCsv("/nonexistent/roc.csv", "x"), IoError);
});

test("hist csv parses bins", () => {
    const p = tmpFile("hist.csv", "bin_left,count\n-2.0,3\n-1.0,17\n0.0,5\n");
    const series = parseHistCsv(p, "null");
    assert.equal(series.bins.length, 3);
    assert.deepEqual(series.bins[1], { left: -1.0, count: 17 });
});

test("hist csv header mismatch names the column", () => {
    const p = tmpFile("hist.csv", "left,count\n0,1\n");
    assert.throws(() => parseHistCsv(p, "x"), /column 1.*'bin_left'.*'left'/);
});
