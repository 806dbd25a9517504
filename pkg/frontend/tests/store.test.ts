import { describe, expect, it } from "vitest";

import {
  acknowledgeSession,
  applySnapshot,
  initialState,
  researcherNodesOverCap,
  setError,
} from "../src/store";
import type { ResearcherNetworkPayload, SessionView } from "../src/types";

function sessionView(overrides: Partial<SessionView> = {}): SessionView {
  return {
    session_id: "s",
    seeds: [],
    selected_papers: [],
    visible_papers: [],
    submitting_authors: [],
    selected_reviewers: [],
    params: { alpha: 0.7, beta: 0.3 },
    thresholds: {
      min_selected_papers: 1,
      researcher_expiration_years: null,
      conflict_expiration_years: null,
      reference_year: null,
    },
    flags: { hide_conflicted: false, expand: false },
    ...overrides,
  };
}

describe("settings mirror", () => {
  it("always equals the last server acknowledgment", () => {
    let state = initialState();
    expect(state.settingsMirror).toBeNull();
    state = acknowledgeSession(state, sessionView());
    expect(state.settingsMirror?.params.alpha).toBe(0.7);

    const updated = sessionView({
      params: { alpha: 0.5, beta: 0.5 },
      flags: { hide_conflicted: true, expand: false },
    });
    state = applySnapshot(state, { session: updated });
    expect(state.settingsMirror).toEqual({
      params: updated.params,
      thresholds: updated.thresholds,
      flags: updated.flags,
    });
  });

  it("keeps stale snapshots on error", () => {
    let state = acknowledgeSession(initialState(), sessionView());
    const before = state.snapshot;
    state = setError(state, "boom");
    expect(state.errorBanner).toBe("boom");
    expect(state.snapshot).toBe(before);
    state = setError(state, null);
    expect(state.errorBanner).toBeNull();
  });
});

describe("researcher node cap", () => {
  it("warns only above the configured cap", () => {
    let state = initialState();
    expect(researcherNodesOverCap(state)).toBe(false);
    const node = {
      kind: "collaborator" as const,
      author_id: "x",
      name: "X",
      role: "collaborator" as const,
      conflicted: false,
      dblp_url: "",
    };
    const big: ResearcherNetworkPayload = {
      nodes: Array.from({ length: 151 }, (_v, i) => ({ ...node, author_id: `x${i}` })),
      edges: [],
    };
    state = applySnapshot(state, { researcherNetwork: big });
    expect(researcherNodesOverCap(state)).toBe(true);
    state = { ...state, researcherNodeCap: 200 };
    expect(researcherNodesOverCap(state)).toBe(false);
  });
});
