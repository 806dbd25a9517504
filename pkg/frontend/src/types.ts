// Shapes of the JSON payloads served by the reviewfinder HTTP API.

export type RoleName =
  | "submitting_author"
  | "submitting_coauthor"
  | "selected_reviewer"
  | "reviewer_coauthor"
  | "candidate"
  | "collaborator";

export interface SessionView {
  session_id: string;
  seeds: string[];
  selected_papers: string[];
  visible_papers: string[];
  submitting_authors: string[];
  selected_reviewers: string[];
  params: { alpha: number; beta: number };
  thresholds: {
    min_selected_papers: number;
    researcher_expiration_years: number | null;
    conflict_expiration_years: number | null;
    reference_year: number | null;
  };
  flags: { hide_conflicted: boolean; expand: boolean };
}

export interface CandidateView {
  author_id: string;
  name: string;
  relevance: number;
  role: RoleName;
  conflicted: boolean;
  selected_paper_ids: string[];
  visible_paper_ids: string[];
  last_active_year: number;
  career: Array<[number, string]>;
  dblp_url: string;
}

export interface CandidatesPayload {
  session_id: string;
  candidates: CandidateView[];
}

export interface PaperNodeView {
  paper_id: string;
  title: string;
  year: number;
  citation_count: number;
  selected: boolean;
  seed: boolean;
}

export interface PaperNetworkPayload {
  nodes: PaperNodeView[];
  arcs: Array<{ source: string; target: string }>;
}

export interface ResearcherNodeView {
  kind: "candidate" | "collaborator";
  author_id: string;
  name: string;
  role: RoleName;
  conflicted: boolean;
  relevance?: number;
  career?: Array<[number, string]>;
  dblp_url: string;
}

export interface ResearcherEdgeView {
  a: string;
  b: string;
  common_total: number;
  common_visible: number;
  common_visible_ids: string[];
  includes_selected: boolean;
  last_common_year: number;
}

export interface ResearcherNetworkPayload {
  nodes: ResearcherNodeView[];
  edges: ResearcherEdgeView[];
}

export interface SubstituteEntryView {
  author_id: string;
  name: string;
  common_papers_with_reviewer: number;
  relevance: number;
}

export interface SubstitutesPayload {
  for_reviewer: string;
  entries: SubstituteEntryView[];
}

export interface SearchResultView {
  paper_id: string;
  title: string;
  year: number;
  already_in_network: boolean;
}

export interface PaperDetailsView {
  paper_id: string;
  title: string;
  year: number;
  venue: string;
  authors: Array<{ author_id: string; name: string }>;
  citation_count: number;
  dblp_url: string;
}

export interface ApiErrorPayload {
  code: string;
  message: string;
  details: { pairs?: string[][]; [key: string]: unknown };
}

export interface SettingsUpdate {
  params?: { alpha: number; beta: number };
  thresholds?: SessionView["thresholds"];
  flags?: SessionView["flags"];
}
