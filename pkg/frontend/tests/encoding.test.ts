import { describe, expect, it } from "vitest";

import {
  ARC_DEFAULT_COLOR,
  ARC_SELECTED_COLOR,
  MAX_NODE_RADIUS,
  MIN_NODE_RADIUS,
  OUT_OF_NETWORK_COLOR,
  ROLE_COLORS,
  citationColormap,
  nameFontStyle,
  nodeRadius,
  paperDotColor,
  researcherArcColor,
  rgbAt,
  roleColor,
} from "../src/encoding";
import type { RoleName } from "../src/types";

describe("role colors and fonts", () => {
  it("matches the six-role table exactly", () => {
    expect(ROLE_COLORS).toEqual({
      submitting_author: "purple",
      submitting_coauthor: "red",
      selected_reviewer: "blue",
      reviewer_coauthor: "brown",
      candidate: "black",
      collaborator: "lightblue",
    });
    for (const role of Object.keys(ROLE_COLORS) as RoleName[]) {
      expect(roleColor(role)).toBe(ROLE_COLORS[role]);
    }
  });

  it("italicises conflicted names and nothing else", () => {
    expect(nameFontStyle(true)).toBe("italic");
    expect(nameFontStyle(false)).toBe("normal");
  });
});

describe("citation colormap", () => {
  it("is linear from yellow to green over the current range", () => {
    const colormap = citationColormap([0, 5, 10]);
    expect(colormap(0)).toBe(rgbAt(0));
    expect(colormap(10)).toBe(rgbAt(1));
    expect(colormap(5)).toBe(rgbAt(0.5));
    // yellow end has more red than the green end
    const low = colormap(0).match(/\d+/g)!.map(Number);
    const high = colormap(10).match(/\d+/g)!.map(Number);
    expect(low[0]).toBeGreaterThan(high[0]);
    expect(high[1]).toBeGreaterThan(0);
  });

  it("renders mid-scale when all counts are equal", () => {
    const colormap = citationColormap([3, 3, 3]);
    expect(colormap(3)).toBe(rgbAt(0.5));
    expect(citationColormap([])(42)).toBe(rgbAt(0.5));
  });

  it("greys papers outside the network", () => {
    const colormap = citationColormap([0, 10]);
    expect(paperDotColor(false, colormap, 10)).toBe(OUT_OF_NETWORK_COLOR);
    expect(paperDotColor(true, colormap, 10)).toBe(rgbAt(1));
  });

  it("is deterministic for identical data", () => {
    const a = citationColormap([1, 4, 9]);
    const b = citationColormap([1, 4, 9]);
    for (const count of [1, 2, 4, 9]) {
      expect(a(count)).toBe(b(count));
    }
  });
});

describe("researcher network encoding", () => {
  it("node radius grows monotonically with relevance", () => {
    const radii = [0, 0.3, 0.7, 1.4, 2.1].map((r) => nodeRadius(r, 2.1));
    for (let i = 1; i < radii.length; i++) {
      expect(radii[i]).toBeGreaterThan(radii[i - 1]);
    }
    expect(radii[0]).toBe(MIN_NODE_RADIUS);
    expect(radii[radii.length - 1]).toBe(MAX_NODE_RADIUS);
    expect(nodeRadius(1, 0)).toBe(MIN_NODE_RADIUS); // degenerate
  });

  it("arcs are blue exactly when the shared papers include a selected one", () => {
    expect(researcherArcColor(true)).toBe(ARC_SELECTED_COLOR);
    expect(researcherArcColor(true)).toBe("blue");
    expect(researcherArcColor(false)).toBe(ARC_DEFAULT_COLOR);
  });
});
