// Visual encoding shared by all views: one theme table, pure functions of
// server-provided data. Identical data must always yield identical encoding.

import type { RoleName } from "./types";

// Role colors for researcher names (timeline, control panel) and researcher
// network nodes. Reviewer co-authors render brown; switching them to grey is
// a one-line change here.
export const ROLE_COLORS: Record<RoleName, string> = {
  submitting_author: "purple",
  submitting_coauthor: "red",
  selected_reviewer: "blue",
  reviewer_coauthor: "brown",
  candidate: "black",
  collaborator: "lightblue",
};

export function roleColor(role: RoleName): string {
  return ROLE_COLORS[role];
}

// Conflicted researchers are italicised everywhere their name appears.
export function nameFontStyle(conflicted: boolean): "italic" | "normal" {
  return conflicted ? "italic" : "normal";
}

// Selected papers carry a blue contour circle in the paper network and the
// timeline.
export const SELECTION_RING_COLOR = "blue";
export const SELECTION_RING_WIDTH = 2.5;

// Citation colormap endpoints: few citations -> yellow, many -> green.
const LOW = { r: 255, g: 235, b: 59 };
const HIGH = { r: 27, g: 94, b: 32 };

function lerpChannel(a: number, b: number, t: number): number {
  return Math.round(a + (b - a) * t);
}

export function rgbAt(t: number): string {
  const clamped = Math.max(0, Math.min(1, t));
  const r = lerpChannel(LOW.r, HIGH.r, clamped);
  const g = lerpChannel(LOW.g, HIGH.g, clamped);
  const b = lerpChannel(LOW.b, HIGH.b, clamped);
  return `rgb(${r}, ${g}, ${b})`;
}

/**
 * Linear colormap over the citation-count range of the papers currently in
 * the network. When every count is equal the scale is degenerate and all
 * papers render mid-scale.
 */
export function citationColormap(counts: number[]): (count: number) => string {
  if (counts.length === 0) {
    return () => rgbAt(0.5);
  }
  const min = Math.min(...counts);
  const max = Math.max(...counts);
  if (min === max) {
    return () => rgbAt(0.5);
  }
  return (count: number) => rgbAt((count - min) / (max - min));
}

// Dots for papers outside the current network are grey.
export const OUT_OF_NETWORK_COLOR = "#bbbbbb";

export function paperDotColor(
  inNetwork: boolean,
  colormap: (count: number) => string,
  citationCount: number,
): string {
  return inNetwork ? colormap(citationCount) : OUT_OF_NETWORK_COLOR;
}

export const MIN_NODE_RADIUS = 5;
export const MAX_NODE_RADIUS = 18;

/**
 * Researcher-network node radius, strictly monotone in relevance (area-true:
 * radius grows with the square root of the normalized score).
 */
export function nodeRadius(relevance: number, maxRelevance: number): number {
  if (maxRelevance <= 0) {
    return MIN_NODE_RADIUS;
  }
  const t = Math.sqrt(Math.max(0, Math.min(1, relevance / maxRelevance)));
  return MIN_NODE_RADIUS + (MAX_NODE_RADIUS - MIN_NODE_RADIUS) * t;
}

// Co-authorship arcs are blue when the shared papers include a selected one.
export const ARC_SELECTED_COLOR = "blue";
export const ARC_DEFAULT_COLOR = "#999999";

export function researcherArcColor(includesSelected: boolean): string {
  return includesSelected ? ARC_SELECTED_COLOR : ARC_DEFAULT_COLOR;
}

export const HIGHLIGHT_COLOR = "#ff8c00";
