// Cross-view highlighting: pure functions from a focused entity to the sets
// of papers/researchers/edges every view must emphasise. The same focus
// always produces the same highlight, and all memberships come verbatim
// from API payloads (candidate careers, edge shared-paper ids).

import type { ResearcherEdgeView, ResearcherNodeView } from "./types";

export type Focus =
  | { kind: "none" }
  | { kind: "paper"; paperId: string }
  | { kind: "researcher"; authorId: string }
  | { kind: "edge"; a: string; b: string };

export const NO_FOCUS: Focus = { kind: "none" };

export interface Highlights {
  papers: Set<string>;
  researchers: Set<string>;
  edges: Set<string>; // edge keys, see edgeKey()
}

export interface HighlightContext {
  researchers: ResearcherNodeView[];
  edges: ResearcherEdgeView[];
}

export function edgeKey(a: string, b: string): string {
  return a <= b ? `${a}|${b}` : `${b}|${a}`;
}

function emptyHighlights(): Highlights {
  return { papers: new Set(), researchers: new Set(), edges: new Set() };
}

function careerPapers(node: ResearcherNodeView): string[] {
  return (node.career ?? []).map(([, paperId]) => paperId);
}

/** Researchers that authored the paper, per their server-provided careers. */
export function researchersOfPaper(ctx: HighlightContext, paperId: string): string[] {
  return ctx.researchers
    .filter((node) => careerPapers(node).includes(paperId))
    .map((node) => node.author_id);
}

export function computeHighlights(focus: Focus, ctx: HighlightContext): Highlights {
  const out = emptyHighlights();
  if (focus.kind === "none") {
    return out;
  }
  if (focus.kind === "paper") {
    out.papers.add(focus.paperId);
    for (const authorId of researchersOfPaper(ctx, focus.paperId)) {
      out.researchers.add(authorId);
    }
    return out;
  }
  if (focus.kind === "researcher") {
    out.researchers.add(focus.authorId);
    const node = ctx.researchers.find((n) => n.author_id === focus.authorId);
    for (const paperId of node ? careerPapers(node) : []) {
      out.papers.add(paperId);
    }
    for (const edge of ctx.edges) {
      if (edge.a === focus.authorId || edge.b === focus.authorId) {
        out.edges.add(edgeKey(edge.a, edge.b));
        out.researchers.add(edge.a === focus.authorId ? edge.b : edge.a);
      }
    }
    return out;
  }
  // Edge focus: the pair of co-authors plus their shared in-network papers.
  out.researchers.add(focus.a);
  out.researchers.add(focus.b);
  out.edges.add(edgeKey(focus.a, focus.b));
  const edge = ctx.edges.find((e) => edgeKey(e.a, e.b) === edgeKey(focus.a, focus.b));
  for (const paperId of edge?.common_visible_ids ?? []) {
    out.papers.add(paperId);
  }
  return out;
}

/**
 * Hover-over-pin resolution: a pinned focus (mouse click) survives hovers; a
 * hover inside a pinned researcher focus on one of their co-authors narrows
 * to the shared publications (the co-author inspection gesture). Clearing
 * the hover restores the pinned highlight unchanged.
 */
export interface FocusState {
  hover: Focus;
  pinned: Focus;
}

export const IDLE_FOCUS: FocusState = { hover: NO_FOCUS, pinned: NO_FOCUS };

export function resolveHighlights(state: FocusState, ctx: HighlightContext): Highlights {
  if (
    state.pinned.kind === "researcher" &&
    state.hover.kind === "researcher" &&
    state.hover.authorId !== state.pinned.authorId
  ) {
    const pinnedHl = computeHighlights(state.pinned, ctx);
    if (pinnedHl.researchers.has(state.hover.authorId)) {
      return computeHighlights(
        { kind: "edge", a: state.pinned.authorId, b: state.hover.authorId },
        ctx,
      );
    }
  }
  if (state.hover.kind !== "none") {
    return computeHighlights(state.hover, ctx);
  }
  return computeHighlights(state.pinned, ctx);
}

export function setHover(state: FocusState, focus: Focus): FocusState {
  return { ...state, hover: focus };
}

export function clearHover(state: FocusState): FocusState {
  return { ...state, hover: NO_FOCUS };
}

/** A click pins the focus; clicking again (or anywhere) unpins it. */
export function togglePin(state: FocusState, focus: Focus): FocusState {
  if (JSON.stringify(state.pinned) === JSON.stringify(focus)) {
    return { ...state, pinned: NO_FOCUS };
  }
  return { ...state, pinned: focus };
}
