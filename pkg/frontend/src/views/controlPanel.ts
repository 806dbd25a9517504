// Control panel: submitting authors with the Done checkbox, key-paper and
// reviewer fields with drop-down suggestions, substitutes, settings boxes,
// export buttons, and the inline error banner. Every other region of the
// interface stays inert until the Done checkbox confirms the submitting
// authors.

import { nameFontStyle, roleColor } from "../encoding";
import type {
  CandidatesPayload,
  PaperDetailsView,
  SearchResultView,
  SessionView,
  SubstituteEntryView,
} from "../types";

export interface ControlPanelCallbacks {
  searchPapers(q: string): Promise<SearchResultView[]>;
  searchAuthors(q: string): Promise<Array<{ author_id: string; name: string }>>;
  substitutesFor(reviewerId: string): Promise<SubstituteEntryView[]>;
  onConfirmSubmitting(authorIds: string[], done: boolean): void;
  onAddSeed(paperId: string): void;
  onRemoveSeed(paperId: string): void;
  onSelectReviewer(authorId: string): void;
  onRemoveReviewer(authorId: string): void;
  onSwapReviewer(reviewerId: string, substituteId: string): void;
  onApplySettings(settings: {
    thresholds: SessionView["thresholds"];
    flags: SessionView["flags"];
  }): void;
  onExport(format: "json" | "text"): void;
  onHoverPaper(paperId: string | null): void;
}

interface PendingAuthor {
  author_id: string;
  name: string;
}

export class ControlPanel {
  private pendingSubmitting: PendingAuthor[] = [];
  private session: SessionView | null = null;
  private candidates: CandidatesPayload | null = null;
  private lastActive = false;

  readonly banner: HTMLDivElement;
  readonly doneCheckbox: HTMLInputElement;
  private readonly submittingList: HTMLUListElement;
  private readonly submittingInput: HTMLInputElement;
  private readonly submittingSuggestions: HTMLUListElement;
  private readonly gatedSections: HTMLElement[] = [];
  private readonly seedInput: HTMLInputElement;
  private readonly seedSuggestions: HTMLUListElement;
  private readonly seedList: HTMLUListElement;
  private readonly reviewerInput: HTMLInputElement;
  private readonly reviewerSuggestions: HTMLUListElement;
  private readonly reviewerList: HTMLOListElement;
  private readonly detailsBox: HTMLDivElement;
  private readonly settingsInputs: Record<string, HTMLInputElement> = {};

  constructor(
    readonly root: HTMLElement,
    private readonly callbacks: ControlPanelCallbacks,
  ) {
    root.classList.add("control-panel");

    this.banner = el("div", "error-banner");
    this.banner.hidden = true;
    root.appendChild(this.banner);

    // --- submitting authors (always enabled; it is the gate itself)
    const submitting = el("section", "cp-submitting");
    submitting.appendChild(heading("Submitting authors"));
    this.submittingInput = input("search authors…");
    this.submittingSuggestions = el("ul", "suggestions");
    this.submittingList = el("ul", "chip-list");
    const doneLabel = el("label", "done-label");
    this.doneCheckbox = document.createElement("input");
    this.doneCheckbox.type = "checkbox";
    this.doneCheckbox.id = "cp-done";
    doneLabel.append(this.doneCheckbox, document.createTextNode(" Done"));
    submitting.append(this.submittingInput, this.submittingSuggestions, this.submittingList, doneLabel);
    root.appendChild(submitting);

    this.submittingInput.addEventListener("input", () => {
      void this.suggestAuthors();
    });
    this.doneCheckbox.addEventListener("change", () => {
      this.callbacks.onConfirmSubmitting(
        this.pendingSubmitting.map((a) => a.author_id),
        this.doneCheckbox.checked,
      );
    });

    // --- key papers
    const seeds = this.gated("Key papers");
    this.seedInput = input("search titles…");
    this.seedSuggestions = el("ul", "suggestions");
    this.seedList = el("ul", "chip-list");
    seeds.append(this.seedInput, this.seedSuggestions, this.seedList);
    this.seedInput.addEventListener("input", () => {
      void this.suggestPapers();
    });

    // --- selected reviewers
    const reviewers = this.gated("Selected reviewers");
    this.reviewerInput = input("pick a candidate…");
    this.reviewerSuggestions = el("ul", "suggestions");
    this.reviewerList = document.createElement("ol");
    this.reviewerList.className = "reviewer-list";
    reviewers.append(this.reviewerInput, this.reviewerSuggestions, this.reviewerList);
    this.reviewerInput.addEventListener("input", () => this.suggestReviewers());

    // --- settings
    const settings = this.gated("Settings");
    const grid = el("div", "settings-grid");
    for (const [key, label, kind] of [
      ["min_selected_papers", "Productivity threshold", "number"],
      ["researcher_expiration_years", "Researcher expiration (years)", "number"],
      ["conflict_expiration_years", "Conflict expiration (years)", "number"],
      ["hide_conflicted", "Hide Conflicted", "checkbox"],
      ["expand", "Expand RT & RN", "checkbox"],
    ] as const) {
      const rowLabel = el("label", "settings-row");
      const box = document.createElement("input");
      box.type = kind;
      box.name = key;
      this.settingsInputs[key] = box;
      rowLabel.append(box, document.createTextNode(` ${label}`));
      grid.appendChild(rowLabel);
    }
    const apply = button("Apply", () => this.applySettings());
    settings.append(grid, apply);

    // --- details + export
    const details = this.gated("Paper details");
    this.detailsBox = el("div", "paper-details");
    details.appendChild(this.detailsBox);
    const exports = this.gated("Export");
    exports.append(
      button("Download JSON", () => this.callbacks.onExport("json")),
      button("Download text", () => this.callbacks.onExport("text")),
    );
  }

  private gated(title: string): HTMLElement {
    const section = el("section", "cp-section");
    section.dataset.gated = "true";
    section.appendChild(heading(title));
    this.root.appendChild(section);
    this.gatedSections.push(section);
    return section;
  }

  /** Re-render from the latest server snapshot; `active` is the Done gate. */
  render(session: SessionView | null, candidates: CandidatesPayload | null, active: boolean): void {
    this.session = session;
    this.candidates = candidates;
    this.lastActive = active;
    if (session) {
      this.renderSeeds(session);
      void this.renderReviewers(session).then(() => this.applyGating());
      this.renderSettings(session);
    }
    this.applyGating();
  }

  private applyGating(): void {
    for (const section of this.gatedSections) {
      section.classList.toggle("inert", !this.lastActive);
      for (const control of section.querySelectorAll("input, button")) {
        (control as HTMLInputElement | HTMLButtonElement).disabled = !this.lastActive;
      }
    }
  }

  showError(message: string | null): void {
    this.banner.hidden = message === null;
    this.banner.textContent = message ?? "";
  }

  showPaperDetails(details: PaperDetailsView | null): void {
    this.detailsBox.textContent = "";
    if (!details) return;
    const title = el("div", "details-title");
    const link = document.createElement("a");
    link.href = details.dblp_url;
    link.target = "_blank";
    link.textContent = details.title;
    title.appendChild(link);
    const meta = el("div", "details-meta");
    meta.textContent = `${details.venue}, ${details.year} — cited by ${details.citation_count}`;
    const authors = el("div", "details-authors");
    authors.textContent = details.authors.map((a) => a.name).join(", ");
    this.detailsBox.append(title, meta, authors);
  }

  private async suggestAuthors(): Promise<void> {
    const q = this.submittingInput.value.trim();
    this.submittingSuggestions.textContent = "";
    if (!q) return;
    const hits = await this.callbacks.searchAuthors(q);
    for (const hit of hits) {
      const item = el("li", "suggestion");
      item.textContent = hit.name;
      item.addEventListener("click", () => {
        if (!this.pendingSubmitting.some((a) => a.author_id === hit.author_id)) {
          this.pendingSubmitting.push(hit);
        }
        this.submittingInput.value = "";
        this.submittingSuggestions.textContent = "";
        this.renderSubmittingChips();
      });
      this.submittingSuggestions.appendChild(item);
    }
  }

  private renderSubmittingChips(): void {
    this.submittingList.textContent = "";
    for (const author of this.pendingSubmitting) {
      const chip = el("li", "chip");
      chip.textContent = author.name;
      chip.style.color = roleColor("submitting_author");
      const remove = button("×", () => {
        this.pendingSubmitting = this.pendingSubmitting.filter(
          (a) => a.author_id !== author.author_id,
        );
        this.renderSubmittingChips();
      });
      chip.appendChild(remove);
      this.submittingList.appendChild(chip);
    }
  }

  private async suggestPapers(): Promise<void> {
    const q = this.seedInput.value.trim();
    this.seedSuggestions.textContent = "";
    if (!q) return;
    // Suggestions come year-ordered from the server; papers already in the
    // network are visually told apart and not re-addable.
    const hits = await this.callbacks.searchPapers(q);
    for (const hit of hits) {
      const item = el("li", "suggestion");
      item.textContent = `${hit.title} (${hit.year})`;
      item.classList.toggle("in-network", hit.already_in_network);
      item.addEventListener("mouseenter", () => this.callbacks.onHoverPaper(hit.paper_id));
      item.addEventListener("mouseleave", () => this.callbacks.onHoverPaper(null));
      if (!hit.already_in_network) {
        item.addEventListener("click", () => {
          this.seedInput.value = "";
          this.seedSuggestions.textContent = "";
          this.callbacks.onAddSeed(hit.paper_id);
        });
      }
      this.seedSuggestions.appendChild(item);
    }
  }

  private renderSeeds(session: SessionView): void {
    this.seedList.textContent = "";
    for (const paperId of session.seeds) {
      const chip = el("li", "chip");
      chip.textContent = paperId;
      chip.addEventListener("mouseenter", () => this.callbacks.onHoverPaper(paperId));
      chip.addEventListener("mouseleave", () => this.callbacks.onHoverPaper(null));
      chip.appendChild(button("×", () => this.callbacks.onRemoveSeed(paperId)));
      this.seedList.appendChild(chip);
    }
  }

  private suggestReviewers(): void {
    const q = this.reviewerInput.value.trim().toLowerCase();
    this.reviewerSuggestions.textContent = "";
    if (!q || !this.candidates) return;
    // Same color/font rules as the timeline rows.
    for (const cand of this.candidates.candidates) {
      if (!cand.name.toLowerCase().includes(q)) continue;
      const item = el("li", "suggestion");
      item.textContent = cand.name;
      item.style.color = roleColor(cand.role);
      item.style.fontStyle = nameFontStyle(cand.conflicted);
      item.addEventListener("click", () => {
        this.reviewerInput.value = "";
        this.reviewerSuggestions.textContent = "";
        this.callbacks.onSelectReviewer(cand.author_id);
      });
      this.reviewerSuggestions.appendChild(item);
    }
  }

  private async renderReviewers(session: SessionView): Promise<void> {
    this.reviewerList.textContent = "";
    const names = new Map(
      (this.candidates?.candidates ?? []).map((c) => [c.author_id, c.name]),
    );
    for (const reviewerId of session.selected_reviewers) {
      const item = el("li", "reviewer");
      const name = el("span", "reviewer-name");
      name.textContent = names.get(reviewerId) ?? reviewerId;
      name.style.color = roleColor("selected_reviewer");
      name.title = "double-click to remove";
      name.addEventListener("dblclick", () => this.callbacks.onRemoveReviewer(reviewerId));
      item.appendChild(name);
      const subs = el("ul", "substitutes");
      item.appendChild(subs);
      this.reviewerList.appendChild(item);
      try {
        const entries = await this.callbacks.substitutesFor(reviewerId);
        for (const entry of entries) {
          const sub = el("li", "substitute");
          sub.textContent = `${entry.name} (${entry.common_papers_with_reviewer} in common)`;
          sub.title = "click to swap in";
          sub.addEventListener("click", () =>
            this.callbacks.onSwapReviewer(reviewerId, entry.author_id),
          );
          subs.appendChild(sub);
        }
      } catch {
        // substitutes are advisory; the reviewer entry stays usable
      }
    }
  }

  private renderSettings(session: SessionView): void {
    const th = session.thresholds;
    this.settingsInputs.min_selected_papers.value = String(th.min_selected_papers);
    this.settingsInputs.researcher_expiration_years.value =
      th.researcher_expiration_years === null ? "" : String(th.researcher_expiration_years);
    this.settingsInputs.conflict_expiration_years.value =
      th.conflict_expiration_years === null ? "" : String(th.conflict_expiration_years);
    this.settingsInputs.hide_conflicted.checked = session.flags.hide_conflicted;
    this.settingsInputs.expand.checked = session.flags.expand;
  }

  private applySettings(): void {
    if (!this.session) return;
    const intOrNull = (raw: string) => (raw.trim() === "" ? null : Number.parseInt(raw, 10));
    this.callbacks.onApplySettings({
      thresholds: {
        min_selected_papers: intOrNull(this.settingsInputs.min_selected_papers.value) ?? 1,
        researcher_expiration_years: intOrNull(this.settingsInputs.researcher_expiration_years.value),
        conflict_expiration_years: intOrNull(this.settingsInputs.conflict_expiration_years.value),
        reference_year: this.session.thresholds.reference_year,
      },
      flags: {
        hide_conflicted: this.settingsInputs.hide_conflicted.checked,
        expand: this.settingsInputs.expand.checked,
      },
    });
  }
}

function el<K extends keyof HTMLElementTagNameMap>(tag: K, className: string) {
  const node = document.createElement(tag);
  node.className = className;
  return node;
}

function heading(text: string): HTMLHeadingElement {
  const h = document.createElement("h3");
  h.textContent = text;
  return h;
}

function input(placeholder: string): HTMLInputElement {
  const node = document.createElement("input");
  node.type = "text";
  node.placeholder = placeholder;
  return node;
}

function button(text: string, onClick: () => void): HTMLButtonElement {
  const node = document.createElement("button");
  node.type = "button";
  node.textContent = text;
  node.addEventListener("click", onClick);
  return node;
}
