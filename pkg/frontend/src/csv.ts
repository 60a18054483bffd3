/**
 * Strict plain-CSV loading and tabular preprocessing.
 *
 * The accepted format is deliberately narrow: comma separated, first line is
 * the header, no quoting or escaping. The last column is the class label.
 * Every other column is numeric when all of its non-empty cells parse as
 * finite numbers, categorical otherwise. Empty cells are missing values:
 * numeric ones are filled with the column median, a missing categorical cell
 * leaves all of that column's indicator features at zero.
 */

export interface Dataset {
  rows: number[][]; // n x p matrix after imputation and one-hot encoding
  labels: number[]; // class index per row
  featureNames: string[];
  classNames: string[]; // sorted; defines the label index order
}

export function parseTable(text: string): { header: string[]; cells: string[][] } {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length < 2) throw new Error("need a header line and at least one data row");
  const header = lines[0].split(",").map((h) => h.trim());
  const cells: string[][] = [];
  for (let i = 1; i < lines.length; i++) {
    if (lines[i].includes('"')) {
      throw new Error(`line ${i + 1}: quoted fields are not supported`);
    }
    const parts = lines[i].split(",").map((c) => c.trim());
    if (parts.length !== header.length) {
      throw new Error(`line ${i + 1}: expected ${header.length} columns, got ${parts.length}`);
    }
    cells.push(parts);
  }
  return { header, cells };
}

function median(values: number[]): number {
  const v = [...values].sort((a, b) => a - b);
  const m = v.length >> 1;
  return v.length % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

export function prepareDataset(text: string): Dataset {
  const { header, cells } = parseTable(text);
  const n = cells.length;
  const labelCol = header.length - 1;
  if (header.length < 2) throw new Error("need at least one feature column and a label column");

  const rawLabels = cells.map((row, i) => {
    if (row[labelCol] === "") throw new Error(`row ${i + 1}: empty class label`);
    return row[labelCol];
  });
  const classNames = [...new Set(rawLabels)].sort();
  if (classNames.length < 2) throw new Error("need at least two classes");
  const classIndex = new Map(classNames.map((c, k) => [c, k]));
  const labels = rawLabels.map((c) => classIndex.get(c)!);

  const featureNames: string[] = [];
  const columns: number[][] = []; // column-major encoded features
  for (let j = 0; j < labelCol; j++) {
    const raw = cells.map((row) => row[j]);
    const present = raw.filter((c) => c !== "");
    if (present.length === 0) throw new Error(`column ${header[j]} is entirely missing`);
    const numeric = present.every((c) => Number.isFinite(Number(c)));
    if (numeric) {
      const fill = median(present.map(Number));
      featureNames.push(header[j]);
      columns.push(raw.map((c) => (c === "" ? fill : Number(c))));
    } else {
      const levels = [...new Set(present)].sort();
      for (const level of levels) {
        featureNames.push(`${header[j]}=${level}`);
        columns.push(raw.map((c) => (c === level ? 1 : 0)));
      }
    }
  }

  const rows = Array.from({ length: n }, (_, i) => columns.map((col) => col[i]));
  return { rows, labels, featureNames, classNames };
}
