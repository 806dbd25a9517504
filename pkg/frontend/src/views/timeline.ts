// Researcher timeline: one horizontal career line per candidate, in the
// exact order the server ranked them. Dots mark authored papers; dots for
// papers outside the current network are grey, selected papers get the blue
// ring. Names carry the role color and italics for conflicted researchers.

import * as d3 from "d3";

import {
  HIGHLIGHT_COLOR,
  SELECTION_RING_COLOR,
  SELECTION_RING_WIDTH,
  citationColormap,
  nameFontStyle,
  paperDotColor,
  roleColor,
} from "../encoding";
import type { Highlights } from "../highlight";
import type { CandidatesPayload, PaperNetworkPayload } from "../types";

export interface TimelineCallbacks {
  onHoverPaper: (paperId: string | null) => void;
  onHoverResearcher: (authorId: string | null) => void;
  onClickResearcher: (authorId: string) => void;
}

const ROW_HEIGHT = 22;
const LABEL_WIDTH = 170;

export class TimelineView {
  private svg: d3.Selection<SVGSVGElement, unknown, null, undefined>;

  constructor(
    svgElement: SVGSVGElement,
    private readonly callbacks: TimelineCallbacks,
  ) {
    this.svg = d3.select(svgElement);
  }

  render(candidates: CandidatesPayload, paperNetwork: PaperNetworkPayload): void {
    this.svg.selectAll("*").remove();
    const rows = candidates.candidates;
    if (rows.length === 0) {
      return;
    }
    const width = this.svg.node()?.clientWidth || 800;
    this.svg.attr("height", rows.length * ROW_HEIGHT + 30);

    const years = rows.flatMap((row) => row.career.map(([year]) => year));
    const x = d3
      .scaleLinear()
      .domain([Math.min(...years) - 1, Math.max(...years) + 1])
      .range([LABEL_WIDTH, width - 16]);
    const countsByPaper = new Map(paperNetwork.nodes.map((n) => [n.paper_id, n.citation_count]));
    const selectedPapers = new Set(
      paperNetwork.nodes.filter((n) => n.selected).map((n) => n.paper_id),
    );
    const colormap = citationColormap(paperNetwork.nodes.map((n) => n.citation_count));

    this.svg
      .append("g")
      .attr("transform", `translate(0, ${rows.length * ROW_HEIGHT + 6})`)
      .call(d3.axisBottom(x).tickFormat(d3.format("d")));

    const rowSel = this.svg
      .selectAll<SVGGElement, (typeof rows)[number]>("g.rt-row")
      .data(rows)
      .enter()
      .append("g")
      .attr("class", "rt-row")
      .attr("data-author", (d) => d.author_id)
      .attr("transform", (_d, i) => `translate(0, ${i * ROW_HEIGHT + ROW_HEIGHT / 2})`);

    rowSel
      .append("text")
      .attr("class", "rt-name")
      .attr("x", 4)
      .attr("dy", "0.32em")
      .attr("fill", (d) => roleColor(d.role))
      .attr("font-style", (d) => nameFontStyle(d.conflicted))
      .text((d) => d.name)
      .on("mouseenter", (_e, d) => this.callbacks.onHoverResearcher(d.author_id))
      .on("mouseleave", () => this.callbacks.onHoverResearcher(null))
      .on("click", (_e, d) => this.callbacks.onClickResearcher(d.author_id));

    rowSel
      .append("line")
      .attr("x1", (d) => x(d.career[0][0]))
      .attr("x2", (d) => x(d.career[d.career.length - 1][0]))
      .attr("stroke", "#888888")
      .attr("stroke-width", 1.5);

    rowSel
      .selectAll("circle")
      .data((d) =>
        d.career.map(([year, paperId]) => ({
          year,
          paperId,
          inNetwork: d.visible_paper_ids.includes(paperId),
        })),
      )
      .enter()
      .append("circle")
      .attr("class", "rt-dot")
      .attr("data-paper", (d) => d.paperId)
      .attr("cx", (d) => x(d.year))
      .attr("r", 5)
      .attr("fill", (d) =>
        paperDotColor(d.inNetwork, colormap, countsByPaper.get(d.paperId) ?? 0),
      )
      .attr("stroke", (d) => (selectedPapers.has(d.paperId) ? SELECTION_RING_COLOR : "none"))
      .attr("stroke-width", SELECTION_RING_WIDTH)
      .on("mouseenter", (_e, d) => this.callbacks.onHoverPaper(d.paperId))
      .on("mouseleave", () => this.callbacks.onHoverPaper(null));
  }

  applyHighlights(highlights: Highlights): void {
    const active = highlights.papers.size > 0 || highlights.researchers.size > 0;
    this.svg
      .selectAll<SVGGElement, CandidatesPayload["candidates"][number]>("g.rt-row")
      .attr("opacity", (d) => (!active || highlights.researchers.has(d.author_id) ? 1 : 0.3));
    this.svg
      .selectAll<SVGCircleElement, { paperId: string }>("circle.rt-dot")
      .attr("stroke", function (d) {
        if (highlights.papers.has(d.paperId) && active) return HIGHLIGHT_COLOR;
        const current = d3.select(this).attr("stroke");
        return current === HIGHLIGHT_COLOR ? "none" : current;
      });
  }
}
