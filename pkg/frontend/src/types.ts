// Wire types shared with the blueprint service.

export interface GranularBlock {
  GranularBlockName: string;
  ID: number;
  PaperDescription: string;
  Inputs: string[];
  Outputs: string[];
  ReferenceCitation: string;
  FeedsInto: number[];
  InteractsWith: number[];
  Properties?: Record<string, string>;
  [extra: string]: unknown;
}

export interface IntermediateBlock {
  IntermediateBlockName: string;
  GranularBlocks: GranularBlock[];
  [extra: string]: unknown;
}

export interface HighLevelBlock {
  HighLevelBlockName: string;
  IntermediateBlocks: IntermediateBlock[];
  [extra: string]: unknown;
}

export interface Metadata {
  Year?: number;
  Venue?: string;
  DomainTags?: string[];
  [extra: string]: unknown;
}

export interface Blueprint {
  PaperTitle: string;
  Metadata?: Metadata;
  HighLevelBlocks: HighLevelBlock[];
  [extra: string]: unknown;
}

export type EdgeKind = "data" | "interaction";

export interface ValidationIssue {
  code: string;
  path: string;
  message: string;
}

export interface ValidationReport {
  status: "Valid" | "Invalid";
  errors: ValidationIssue[];
  warnings: ValidationIssue[];
}

export interface SystemIndexEntry {
  key: string;
  title: string | null;
  year: number | null;
  review_status: string | null;
}

export interface QueueItem {
  key: string;
  review_status: string;
  refinement_count: number;
}

export interface ExtractionRecordWire {
  blueprint: Blueprint | null;
  attempts: unknown[];
  refinement_count: number;
  model_id: string;
  started_at: string;
  finished_at: string;
  review_status: string;
}

export function* granularBlocks(
  bp: Blueprint,
): Generator<[HighLevelBlock, IntermediateBlock, GranularBlock]> {
  for (const high of bp.HighLevelBlocks) {
    for (const inter of high.IntermediateBlocks) {
      for (const gran of inter.GranularBlocks) {
        yield [high, inter, gran];
      }
    }
  }
}
