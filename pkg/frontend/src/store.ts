// Client-side state: cached server snapshots plus view-only state (focus,
// gating, settings mirror). No domain value is ever derived here — every
// role, score, count, and membership comes from the last API responses.

import type { FocusState } from "./highlight";
import { IDLE_FOCUS } from "./highlight";
import type {
  CandidatesPayload,
  PaperNetworkPayload,
  ResearcherNetworkPayload,
  SessionView,
} from "./types";

export interface Snapshot {
  session: SessionView | null;
  candidates: CandidatesPayload | null;
  paperNetwork: PaperNetworkPayload | null;
  researcherNetwork: ResearcherNetworkPayload | null;
}

export interface AppState {
  snapshot: Snapshot;
  focus: FocusState;
  // The rest of the interface stays inert until the user confirms the
  // submitting authors with the Done checkbox.
  submittingConfirmed: boolean;
  // Mirror of the last server-acknowledged settings (never edited locally).
  settingsMirror: Pick<SessionView, "params" | "thresholds" | "flags"> | null;
  errorBanner: string | null;
  // Soft cap on researcher-network nodes; exceeding it shows a warning.
  researcherNodeCap: number;
}

export function initialState(): AppState {
  return {
    snapshot: { session: null, candidates: null, paperNetwork: null, researcherNetwork: null },
    focus: IDLE_FOCUS,
    submittingConfirmed: false,
    settingsMirror: null,
    errorBanner: null,
    researcherNodeCap: 150,
  };
}

/** All regions except the submitting-authors field unlock after Done. */
export function isInterfaceActive(state: AppState): boolean {
  return state.submittingConfirmed;
}

export function confirmSubmitting(state: AppState, done: boolean): AppState {
  return { ...state, submittingConfirmed: done };
}

/** Server responses are the only source of the settings mirror. */
export function acknowledgeSession(state: AppState, session: SessionView): AppState {
  return {
    ...state,
    snapshot: { ...state.snapshot, session },
    settingsMirror: {
      params: session.params,
      thresholds: session.thresholds,
      flags: session.flags,
    },
  };
}

export function applySnapshot(state: AppState, snapshot: Partial<Snapshot>): AppState {
  const next = { ...state, snapshot: { ...state.snapshot, ...snapshot } };
  return snapshot.session ? acknowledgeSession(next, snapshot.session) : next;
}

export function setError(state: AppState, message: string | null): AppState {
  return { ...state, errorBanner: message };
}

export function researcherNodesOverCap(state: AppState): boolean {
  const nodes = state.snapshot.researcherNetwork?.nodes ?? [];
  return nodes.length > state.researcherNodeCap;
}
