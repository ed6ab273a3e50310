/**
 * Span capture over the summary pane.
 *
 * The pane renders the target text as one text node (white-space: pre-wrap),
 * so DOM Range offsets ARE character offsets into the exact string the
 * backend validates spans against; no renormalization happens on either side.
 */

export interface CharSpan {
  start: number;
  end: number;
}

export type CaptureFailure = "empty" | "outside-pane";

export type CaptureResult =
  | { ok: true; span: CharSpan }
  | { ok: false; reason: CaptureFailure };

function offsetWithin(pane: HTMLElement, container: Node, offset: number): number | null {
  const textNode = pane.firstChild;
  if (!textNode) {
    return null;
  }
  if (container === textNode) {
    return offset;
  }
  // a triple-click or select-all anchors the range at the pane element itself
  if (container === pane) {
    return offset === 0 ? 0 : (textNode.textContent ?? "").length;
  }
  return null;
}

export function captureSpan(range: Range, pane: HTMLElement): CaptureResult {
  if (range.collapsed) {
    return { ok: false, reason: "empty" };
  }
  const start = offsetWithin(pane, range.startContainer, range.startOffset);
  const end = offsetWithin(pane, range.endContainer, range.endOffset);
  if (start === null || end === null) {
    return { ok: false, reason: "outside-pane" };
  }
  const lo = Math.min(start, end);
  const hi = Math.max(start, end);
  if (lo === hi) {
    return { ok: false, reason: "empty" };
  }
  return { ok: true, span: { start: lo, end: hi } };
}

/** Capture from the live document selection, if it lies inside the pane. */
export function captureFromSelection(
  selection: Selection | null,
  pane: HTMLElement,
): CaptureResult {
  if (!selection || selection.rangeCount === 0) {
    return { ok: false, reason: "empty" };
  }
  return captureSpan(selection.getRangeAt(0), pane);
}
