import {
  Adjustment,
  AssessmentDocument,
  BaselineSource,
  ResultDirection,
  SweepTarget,
  cloneDocument,
  freshDocument,
} from "./types.js";

const UNDO_LIMIT = 50;

export interface PendingAdjustment {
  target: Adjustment["target"];
  mode: Adjustment["mode"];
  value: number;
  rationale: string;
  category: Adjustment["category"];
}

// Holds the working document plus transient UI state. Invalid intermediate
// states are representable here; exportDocument refuses to emit them.
export class EditorState {
  document: AssessmentDocument;
  touched = false;
  selectedAdjustment: number | null = null;
  pendingRationale = "";
  activeSweepTarget: SweepTarget = "power";
  private undoStack: AssessmentDocument[] = [];

  constructor(doc?: AssessmentDocument) {
    this.document = doc ? cloneDocument(doc) : freshDocument();
  }

  get canUndo(): boolean {
    return this.undoStack.length > 0;
  }

  get undoDepth(): number {
    return this.undoStack.length;
  }

  undo(): boolean {
    const previous = this.undoStack.pop();
    if (!previous) {
      return false;
    }
    this.document = previous;
    if (this.selectedAdjustment !== null && this.selectedAdjustment >= this.document.adjustments.length) {
      this.selectedAdjustment = null;
    }
    return true;
  }

  private snapshot(): void {
    this.undoStack.push(cloneDocument(this.document));
    if (this.undoStack.length > UNDO_LIMIT) {
      this.undoStack.shift();
    }
    this.touched = true;
  }

  setMeta(field: "id" | "title" | "description", value: string): void {
    this.snapshot();
    if (field === "description") {
      if (value === "") {
        delete this.document.description;
      } else {
        this.document.description = value;
      }
    } else {
      this.document[field] = value;
    }
  }

  setBaseline(field: "power" | "fpr", value: number): void {
    this.snapshot();
    this.document.baseline[field] = value;
  }

  setProvenance(source: BaselineSource, note: string): void {
    this.snapshot();
    this.document.baseline_provenance = note === "" ? { source } : { source, note };
  }

  setPrior(value: number): void {
    this.snapshot();
    this.document.prior_p_h1 = value;
  }

  setDirection(direction: ResultDirection): void {
    this.snapshot();
    this.document.result_direction = direction;
  }

  // Rationale is mandatory; a blank one blocks the commit.
  commitAdjustment(pending: PendingAdjustment): string | null {
    if (pending.rationale.trim() === "") {
      return "rationale is required before an adjustment can be committed";
    }
    if (!Number.isFinite(pending.value)) {
      return "adjustment value must be a number";
    }
    this.snapshot();
    this.document.adjustments.push({
      target: pending.target,
      mode: pending.mode,
      value: pending.value,
      rationale: pending.rationale.trim(),
      category: pending.category,
    });
    this.pendingRationale = "";
    return null;
  }

  removeAdjustment(index: number): boolean {
    if (index < 0 || index >= this.document.adjustments.length) {
      return false;
    }
    this.snapshot();
    this.document.adjustments.splice(index, 1);
    return true;
  }

  moveAdjustment(index: number, delta: -1 | 1): boolean {
    const target = index + delta;
    const ledger = this.document.adjustments;
    if (index < 0 || index >= ledger.length || target < 0 || target >= ledger.length) {
      return false;
    }
    this.snapshot();
    const ledger2 = this.document.adjustments;
    [ledger2[index], ledger2[target]] = [ledger2[target], ledger2[index]];
    return true;
  }

  // Structural checks only; the service stays the authority on semantics.
  exportProblems(): string[] {
    const problems: string[] = [];
    const doc = this.document;
    if (doc.id.trim() === "") {
      problems.push("id must not be blank");
    }
    if (doc.title.trim() === "") {
      problems.push("title must not be blank");
    }
    if (!(doc.baseline.power > 0 && doc.baseline.power < 1)) {
      problems.push("baseline power must be strictly between 0 and 1");
    }
    if (!(doc.baseline.fpr > 0 && doc.baseline.fpr < 1)) {
      problems.push("baseline fpr must be strictly between 0 and 1");
    }
    if (!(doc.prior_p_h1 > 0 && doc.prior_p_h1 < 1)) {
      problems.push("prior_p_h1 must be strictly between 0 and 1");
    }
    doc.adjustments.forEach((adj, i) => {
      if (adj.rationale.trim() === "") {
        problems.push(`adjustment ${i + 1} is missing a rationale`);
      }
      if (!Number.isFinite(adj.value)) {
        problems.push(`adjustment ${i + 1} has a non-numeric value`);
      }
    });
    return problems;
  }

  exportDocument(): AssessmentDocument {
    const problems = this.exportProblems();
    if (problems.length > 0) {
      throw new Error(`document is not exportable: ${problems.join("; ")}`);
    }
    return cloneDocument(this.document);
  }

  importDocument(doc: AssessmentDocument): void {
    this.snapshot();
    this.document = cloneDocument(doc);
    this.selectedAdjustment = null;
  }
}
