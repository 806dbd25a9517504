// Application controller: owns the state, the API client, and the four
// coordinated views. Every mutation goes to the server and the views are
// re-rendered from the refreshed snapshot; on API failure the stale views
// stay up behind an error banner.

import { ApiClient, ApiError } from "./api";
import type { Focus } from "./highlight";
import { clearHover, resolveHighlights, setHover, togglePin } from "./highlight";
import {
  acknowledgeSession,
  applySnapshot,
  confirmSubmitting,
  initialState,
  isInterfaceActive,
  researcherNodesOverCap,
  setError,
  type AppState,
} from "./store";
import type { SessionView } from "./types";
import { ControlPanel } from "./views/controlPanel";
import { PaperNetworkView } from "./views/paperNetwork";
import { ResearcherNetworkView } from "./views/researcherNetwork";
import { TimelineView } from "./views/timeline";

declare global {
  interface Window {
    REVIEWFINDER_API?: string;
  }
}

export class App {
  private state: AppState = initialState();
  private refreshQueued = false;
  private refreshing = false;

  private readonly paperNetwork: PaperNetworkView;
  private readonly timeline: TimelineView;
  private readonly researcherNetwork: ResearcherNetworkView;
  private readonly controlPanel: ControlPanel;

  constructor(
    private readonly api: ApiClient,
    rootIds = {
      pn: "paper-network",
      rt: "researcher-timeline",
      rn: "researcher-network",
      cp: "control-panel",
      capBanner: "cap-banner",
    },
  ) {
    this.paperNetwork = new PaperNetworkView(
      document.getElementById(rootIds.pn) as unknown as SVGSVGElement,
      {
        onHover: (paperId) => this.hover(paperId ? { kind: "paper", paperId } : null),
        onClick: (paperId) => {
          this.pin({ kind: "paper", paperId });
          void this.showDetails(paperId);
        },
        onToggleSelect: (paperId) => void this.toggleSelect(paperId),
      },
    );
    this.timeline = new TimelineView(
      document.getElementById(rootIds.rt) as unknown as SVGSVGElement,
      {
        onHoverPaper: (paperId) => this.hover(paperId ? { kind: "paper", paperId } : null),
        onHoverResearcher: (authorId) =>
          this.hover(authorId ? { kind: "researcher", authorId } : null),
        onClickResearcher: (authorId) => this.pin({ kind: "researcher", authorId }),
      },
    );
    this.researcherNetwork = new ResearcherNetworkView(
      document.getElementById(rootIds.rn) as unknown as SVGSVGElement,
      {
        onHoverResearcher: (authorId) =>
          this.hover(authorId ? { kind: "researcher", authorId } : null),
        onClickResearcher: (authorId) => this.pin({ kind: "researcher", authorId }),
        onHoverEdge: (edge) => this.hover(edge ? { kind: "edge", a: edge.a, b: edge.b } : null),
      },
    );
    this.controlPanel = new ControlPanel(document.getElementById(rootIds.cp) as HTMLElement, {
      searchPapers: async (q) =>
        (await this.api.searchPapers(q, this.state.snapshot.session?.session_id)).results,
      searchAuthors: async (q) => (await this.api.searchAuthors(q)).results,
      substitutesFor: async (reviewerId) =>
        (await this.api.substitutes(this.sessionId(), reviewerId)).entries,
      onConfirmSubmitting: (ids, done) => void this.confirmSubmitting(ids, done),
      onAddSeed: (paperId) => void this.mutation(() => this.api.addSeeds(this.sessionId(), [paperId])),
      onRemoveSeed: (paperId) => void this.mutation(() => this.api.removeSeed(this.sessionId(), paperId)),
      onSelectReviewer: (authorId) =>
        void this.mutation(() => this.api.selectReviewer(this.sessionId(), authorId)),
      onRemoveReviewer: (authorId) =>
        void this.mutation(() => this.api.removeReviewer(this.sessionId(), authorId)),
      onSwapReviewer: (reviewerId, substituteId) =>
        void this.mutation(() => this.api.swapReviewer(this.sessionId(), reviewerId, substituteId)),
      onApplySettings: (settings) =>
        void this.mutation(() => this.api.updateSettings(this.sessionId(), settings)),
      onExport: (format) => void this.downloadExport(format),
      onHoverPaper: (paperId) => this.hover(paperId ? { kind: "paper", paperId } : null),
    });
  }

  private sessionId(): string {
    const session = this.state.snapshot.session;
    if (!session) throw new Error("no session yet");
    return session.session_id;
  }

  async start(): Promise<void> {
    const session = await this.api.createSession();
    this.state = acknowledgeSession(this.state, session);
    await this.refresh();
  }

  private async confirmSubmitting(ids: string[], done: boolean): Promise<void> {
    if (done) {
      const ok = await this.mutation(() => this.api.setSubmittingAuthors(this.sessionId(), ids));
      if (!ok) {
        this.controlPanel.doneCheckbox.checked = false;
        return;
      }
    }
    this.state = confirmSubmitting(this.state, done);
    this.renderAll();
  }

  private async toggleSelect(paperId: string): Promise<void> {
    const session = this.state.snapshot.session;
    if (!session) return;
    if (session.seeds.includes(paperId)) {
      await this.mutation(() => this.api.removeSeed(session.session_id, paperId));
    } else if (session.selected_papers.includes(paperId)) {
      await this.mutation(() => this.api.deselectPaper(session.session_id, paperId));
    } else {
      await this.mutation(() => this.api.selectPaper(session.session_id, paperId));
    }
  }

  /** Run one server mutation; refresh on success, banner on failure. */
  private async mutation(run: () => Promise<SessionView>): Promise<boolean> {
    try {
      const session = await run();
      this.state = setError(acknowledgeSession(this.state, session), null);
      await this.refresh();
      return true;
    } catch (error) {
      this.state = setError(this.state, describeError(error));
      this.controlPanel.showError(this.state.errorBanner);
      return false; // stale views stay up
    }
  }

  /** Re-pull every snapshot; concurrent calls coalesce into one more run. */
  async refresh(): Promise<void> {
    if (this.refreshing) {
      this.refreshQueued = true;
      return;
    }
    this.refreshing = true;
    try {
      const id = this.sessionId();
      const [session, candidates, paperNetwork, researcherNetwork] = await Promise.all([
        this.api.getSession(id),
        this.api.candidates(id),
        this.api.paperNetwork(id),
        this.api.researcherNetwork(id),
      ]);
      this.state = setError(
        applySnapshot(this.state, { session, candidates, paperNetwork, researcherNetwork }),
        null,
      );
      this.renderAll();
    } catch (error) {
      this.state = setError(this.state, describeError(error));
      this.controlPanel.showError(this.state.errorBanner);
    } finally {
      this.refreshing = false;
      if (this.refreshQueued) {
        this.refreshQueued = false;
        await this.refresh();
      }
    }
  }

  private renderAll(): void {
    const { session, candidates, paperNetwork, researcherNetwork } = this.state.snapshot;
    const active = isInterfaceActive(this.state);
    document.body.classList.toggle("gated", !active);
    this.controlPanel.render(session, candidates, active);
    this.controlPanel.showError(this.state.errorBanner);
    if (paperNetwork) this.paperNetwork.render(paperNetwork);
    if (candidates && paperNetwork) this.timeline.render(candidates, paperNetwork);
    if (researcherNetwork) this.researcherNetwork.render(researcherNetwork);
    const capBanner = document.getElementById("cap-banner");
    if (capBanner) {
      capBanner.hidden = !researcherNodesOverCap(this.state);
      capBanner.textContent = `showing ${researcherNetwork?.nodes.length ?? 0} researchers; large networks can slow the interface down`;
    }
    this.applyHighlights();
  }

  private hover(focus: Focus | null): void {
    this.state = {
      ...this.state,
      focus: focus ? setHover(this.state.focus, focus) : clearHover(this.state.focus),
    };
    this.applyHighlights();
  }

  private pin(focus: Focus): void {
    this.state = { ...this.state, focus: togglePin(this.state.focus, focus) };
    this.applyHighlights();
  }

  private applyHighlights(): void {
    const { researcherNetwork } = this.state.snapshot;
    const highlights = resolveHighlights(this.state.focus, {
      researchers: researcherNetwork?.nodes ?? [],
      edges: researcherNetwork?.edges ?? [],
    });
    this.paperNetwork.applyHighlights(highlights);
    this.timeline.applyHighlights(highlights);
    this.researcherNetwork.applyHighlights(highlights);
  }

  private async showDetails(paperId: string): Promise<void> {
    try {
      this.controlPanel.showPaperDetails(await this.api.paperDetails(paperId));
    } catch (error) {
      this.controlPanel.showError(describeError(error));
    }
  }

  private async downloadExport(format: "json" | "text"): Promise<void> {
    try {
      const id = this.sessionId();
      const content =
        format === "text"
          ? await this.api.exportText(id)
          : JSON.stringify(await this.api.exportJson(id), null, 2);
      const blob = new Blob([content], { type: format === "text" ? "text/plain" : "application/json" });
      const anchor = document.createElement("a");
      anchor.href = URL.createObjectURL(blob);
      anchor.download = `reviewers.${format === "text" ? "txt" : "json"}`;
      anchor.click();
      URL.revokeObjectURL(anchor.href);
    } catch (error) {
      this.controlPanel.showError(describeError(error));
    }
  }
}

export function describeError(error: unknown): string {
  if (error instanceof ApiError) {
    const pairs = error.payload.details.pairs;
    if (pairs && pairs.length > 0) {
      return `${error.payload.message} (${pairs.map((p) => p.join(" × ")).join(", ")})`;
    }
    return error.payload.message;
  }
  return error instanceof Error ? error.message : String(error);
}

if (typeof document !== "undefined" && document.getElementById("paper-network")) {
  const app = new App(new ApiClient(window.REVIEWFINDER_API ?? ""));
  void app.start();
}
