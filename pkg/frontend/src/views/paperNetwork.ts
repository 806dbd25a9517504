// Paper network: citation graph of the visible papers. The horizontal axis
// is publication time (x is pinned to the year scale); only the vertical
// position is resolved by the force simulation.

import * as d3 from "d3";

import {
  SELECTION_RING_COLOR,
  SELECTION_RING_WIDTH,
  HIGHLIGHT_COLOR,
  citationColormap,
} from "../encoding";
import type { Highlights } from "../highlight";
import type { PaperNetworkPayload, PaperNodeView } from "../types";

interface SimNode extends d3.SimulationNodeDatum {
  data: PaperNodeView;
}

export interface PaperNetworkCallbacks {
  onHover: (paperId: string | null) => void;
  onClick: (paperId: string) => void;
  onToggleSelect: (paperId: string) => void;
}

export class PaperNetworkView {
  private svg: d3.Selection<SVGSVGElement, unknown, null, undefined>;
  private root: d3.Selection<SVGGElement, unknown, null, undefined>;
  private simulation: d3.Simulation<SimNode, undefined> | null = null;
  private nodesById = new Map<string, SimNode>();

  constructor(
    svgElement: SVGSVGElement,
    private readonly callbacks: PaperNetworkCallbacks,
  ) {
    this.svg = d3.select(svgElement);
    this.root = this.svg.append("g");
    this.svg.call(
      d3
        .zoom<SVGSVGElement, unknown>()
        .scaleExtent([0.3, 4])
        .on("zoom", (event) => this.root.attr("transform", event.transform)),
    );
  }

  render(payload: PaperNetworkPayload): void {
    const width = this.svg.node()?.clientWidth || 800;
    const height = this.svg.node()?.clientHeight || 360;
    this.root.selectAll("*").remove();
    this.simulation?.stop();
    this.nodesById.clear();
    if (payload.nodes.length === 0) {
      return;
    }

    const years = payload.nodes.map((n) => n.year);
    const x = d3
      .scaleLinear()
      .domain([Math.min(...years) - 1, Math.max(...years) + 1])
      .range([40, width - 20]);
    const colormap = citationColormap(payload.nodes.map((n) => n.citation_count));

    const axis = d3.axisBottom(x).tickFormat(d3.format("d"));
    this.root
      .append("g")
      .attr("class", "year-axis")
      .attr("transform", `translate(0, ${height - 24})`)
      .call(axis);

    const simNodes: SimNode[] = payload.nodes.map((data) => ({
      data,
      x: x(data.year),
      y: height / 2,
    }));
    for (const node of simNodes) {
      this.nodesById.set(node.data.paper_id, node);
    }
    const links = payload.arcs
      .filter((a) => this.nodesById.has(a.source) && this.nodesById.has(a.target))
      .map((a) => ({
        source: this.nodesById.get(a.source)!,
        target: this.nodesById.get(a.target)!,
      }));

    const arcSel = this.root
      .append("g")
      .selectAll("line")
      .data(links)
      .enter()
      .append("line")
      .attr("class", "citation-arc")
      .attr("stroke", "#cccccc")
      .attr("stroke-width", 1);

    const nodeSel = this.root
      .append("g")
      .selectAll<SVGCircleElement, SimNode>("circle")
      .data(simNodes)
      .enter()
      .append("circle")
      .attr("class", "paper-node")
      .attr("data-paper", (d) => d.data.paper_id)
      .attr("r", 7)
      .attr("fill", (d) => colormap(d.data.citation_count))
      .attr("stroke", (d) => (d.data.selected ? SELECTION_RING_COLOR : "#666666"))
      .attr("stroke-width", (d) => (d.data.selected ? SELECTION_RING_WIDTH : 0.8))
      .on("mouseenter", (_e, d) => this.callbacks.onHover(d.data.paper_id))
      .on("mouseleave", () => this.callbacks.onHover(null))
      .on("click", (_e, d) => this.callbacks.onClick(d.data.paper_id))
      .on("dblclick", (event, d) => {
        event.stopPropagation();
        this.callbacks.onToggleSelect(d.data.paper_id);
      });

    nodeSel.append("title").text((d) => `${d.data.title} (${d.data.year})`);

    // x stays glued to the year axis; the simulation only spreads rows apart.
    this.simulation = d3
      .forceSimulation(simNodes)
      .force("collide", d3.forceCollide(12))
      .force("charge", d3.forceManyBody().strength(-20))
      .force("y", d3.forceY(height / 2).strength(0.05))
      .on("tick", () => {
        for (const node of simNodes) {
          node.x = x(node.data.year);
          node.y = Math.max(16, Math.min(height - 40, node.y ?? height / 2));
        }
        nodeSel.attr("cx", (d) => d.x!).attr("cy", (d) => d.y!);
        arcSel
          .attr("x1", (d) => d.source.x!)
          .attr("y1", (d) => d.source.y!)
          .attr("x2", (d) => d.target.x!)
          .attr("y2", (d) => d.target.y!);
      });
  }

  applyHighlights(highlights: Highlights): void {
    const active = highlights.papers.size > 0 || highlights.researchers.size > 0;
    this.root
      .selectAll<SVGCircleElement, SimNode>("circle.paper-node")
      .attr("opacity", (d) => (!active || highlights.papers.has(d.data.paper_id) ? 1 : 0.25))
      .attr("stroke", (d) =>
        highlights.papers.has(d.data.paper_id) && active
          ? HIGHLIGHT_COLOR
          : d.data.selected
            ? SELECTION_RING_COLOR
            : "#666666",
      );
  }
}
