// Researcher network: force-directed co-authorship graph over candidates
// and their collaborators. Node size tracks relevance, node color the role;
// arcs turn blue when the shared papers include a selected one. Hovering an
// arc pops up the pair of names with their common-paper counts.

import * as d3 from "d3";

import {
  HIGHLIGHT_COLOR,
  nameFontStyle,
  nodeRadius,
  researcherArcColor,
  roleColor,
} from "../encoding";
import type { Highlights } from "../highlight";
import { edgeKey } from "../highlight";
import type { ResearcherEdgeView, ResearcherNetworkPayload, ResearcherNodeView } from "../types";

interface SimNode extends d3.SimulationNodeDatum {
  data: ResearcherNodeView;
}

interface SimLink extends d3.SimulationLinkDatum<SimNode> {
  data: ResearcherEdgeView;
}

export interface ResearcherNetworkCallbacks {
  onHoverResearcher: (authorId: string | null) => void;
  onClickResearcher: (authorId: string) => void;
  onHoverEdge: (edge: ResearcherEdgeView | null) => void;
}

export class ResearcherNetworkView {
  private svg: d3.Selection<SVGSVGElement, unknown, null, undefined>;
  private root: d3.Selection<SVGGElement, unknown, null, undefined>;
  private popup: d3.Selection<SVGTextElement, unknown, null, undefined>;
  private simulation: d3.Simulation<SimNode, SimLink> | null = null;

  constructor(
    svgElement: SVGSVGElement,
    private readonly callbacks: ResearcherNetworkCallbacks,
  ) {
    this.svg = d3.select(svgElement);
    this.root = this.svg.append("g");
    this.popup = this.svg
      .append("text")
      .attr("class", "rn-popup")
      .attr("x", "98%")
      .attr("y", 16)
      .attr("text-anchor", "end");
    this.svg.call(
      d3
        .zoom<SVGSVGElement, unknown>()
        .scaleExtent([0.3, 4])
        .on("zoom", (event) => this.root.attr("transform", event.transform)),
    );
  }

  render(payload: ResearcherNetworkPayload): void {
    const width = this.svg.node()?.clientWidth || 600;
    const height = this.svg.node()?.clientHeight || 360;
    this.root.selectAll("*").remove();
    this.simulation?.stop();
    if (payload.nodes.length === 0) {
      return;
    }

    const maxRelevance = Math.max(
      0,
      ...payload.nodes.map((n) => (n.kind === "candidate" ? (n.relevance ?? 0) : 0)),
    );
    const simNodes: SimNode[] = payload.nodes.map((data) => ({ data }));
    const byId = new Map(simNodes.map((n) => [n.data.author_id, n]));
    const simLinks: SimLink[] = payload.edges
      .filter((e) => byId.has(e.a) && byId.has(e.b))
      .map((data) => ({ source: byId.get(data.a)!, target: byId.get(data.b)!, data }));

    const linkSel = this.root
      .append("g")
      .selectAll<SVGLineElement, SimLink>("line")
      .data(simLinks)
      .enter()
      .append("line")
      .attr("class", "rn-edge")
      .attr("stroke", (d) => researcherArcColor(d.data.includes_selected))
      .attr("stroke-width", (d) => Math.min(1 + d.data.common_total, 6))
      .on("mouseenter", (_e, d) => {
        this.popup.text(
          `${byId.get(d.data.a)!.data.name} — ${byId.get(d.data.b)!.data.name}: ` +
            `${d.data.common_total} common, ${d.data.common_visible} in network`,
        );
        this.callbacks.onHoverEdge(d.data);
      })
      .on("mouseleave", () => {
        this.popup.text("");
        this.callbacks.onHoverEdge(null);
      });

    const radius = (d: SimNode) =>
      d.data.kind === "candidate" ? nodeRadius(d.data.relevance ?? 0, maxRelevance) : 5;

    const nodeSel = this.root
      .append("g")
      .selectAll<SVGCircleElement, SimNode>("circle")
      .data(simNodes)
      .enter()
      .append("circle")
      .attr("class", "rn-node")
      .attr("data-author", (d) => d.data.author_id)
      .attr("r", radius)
      .attr("fill", (d) => roleColor(d.data.role))
      .attr("font-style", (d) => nameFontStyle(d.data.conflicted))
      .on("mouseenter", (_e, d) => {
        this.popup.text(d.data.name);
        this.callbacks.onHoverResearcher(d.data.author_id);
      })
      .on("mouseleave", () => {
        this.popup.text("");
        this.callbacks.onHoverResearcher(null);
      })
      .on("click", (_e, d) => this.callbacks.onClickResearcher(d.data.author_id));

    nodeSel.append("title").text((d) => d.data.name);

    this.simulation = d3
      .forceSimulation(simNodes)
      .force("link", d3.forceLink<SimNode, SimLink>(simLinks).distance(60))
      .force("charge", d3.forceManyBody().strength(-80))
      .force("center", d3.forceCenter(width / 2, height / 2))
      .force("collide", d3.forceCollide<SimNode>((d) => radius(d) + 2))
      .on("tick", () => {
        nodeSel.attr("cx", (d) => d.x!).attr("cy", (d) => d.y!);
        linkSel
          .attr("x1", (d) => (d.source as SimNode).x!)
          .attr("y1", (d) => (d.source as SimNode).y!)
          .attr("x2", (d) => (d.target as SimNode).x!)
          .attr("y2", (d) => (d.target as SimNode).y!);
      });
  }

  applyHighlights(highlights: Highlights): void {
    const active = highlights.researchers.size > 0 || highlights.papers.size > 0;
    this.root
      .selectAll<SVGCircleElement, SimNode>("circle.rn-node")
      .attr("opacity", (d) => (!active || highlights.researchers.has(d.data.author_id) ? 1 : 0.25));
    this.root
      .selectAll<SVGLineElement, SimLink>("line.rn-edge")
      .attr("stroke", (d) =>
        highlights.edges.has(edgeKey(d.data.a, d.data.b)) && active
          ? HIGHLIGHT_COLOR
          : researcherArcColor(d.data.includes_selected),
      )
      .attr("opacity", (d) =>
        !active || highlights.edges.has(edgeKey(d.data.a, d.data.b)) ? 1 : 0.2,
      );
  }
}
