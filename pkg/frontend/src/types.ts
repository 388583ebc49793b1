/** Payload types mirroring the detection service's HTTP contract. */

export interface FeatureZ {
  name: string;
  value: number;
  z: number;
  missing: boolean;
}

export interface TimelineRow {
  tick: number;
  roundNum: number;
  kind: "engage" | "fire" | "guard" | "kill" | "prop" | "vulnerable";
  detail: string;
}

export interface SubsystemVerdict {
  decision: 0 | 1;
  score: number;
}

export interface Evidence {
  topFeatures: FeatureZ[];
  timeline: TimelineRow[];
  subsystems: {
    pov: SubsystemVerdict;
    stats: SubsystemVerdict;
    spc: SubsystemVerdict;
  };
}

export interface FlaggedEntry {
  reportId: string;
  matchId: string;
  steamId: string;
  w: number;
  epsilon: number;
  status: "pending" | "decided";
  evidence: Evidence;
}

export interface FlaggedResponse {
  flagged: FlaggedEntry[];
  /** feature names, most distinguishing first (train-split ranking) */
  ranking: string[];
}

export interface ObjectivePayload {
  kind: "f1" | "accuracy" | "auc" | "accuracy-subject-to-recall";
  r?: number | null;
}

export interface MvinSettings {
  lambda: number[];
  epsilon: number;
  objective: ObjectivePayload;
  validationMetrics: {
    objectiveValue: number;
    recall: number | null;
    accuracy: number | null;
    npv: number | null;
    oei: number | null;
    tp: number;
    tn: number;
    fp: number;
    fn: number;
  };
}

export interface OptimizerResponse {
  old: MvinSettings;
  new: MvinSettings;
  applied: boolean;
}

export interface VerdictRecord {
  reportId: string;
  steamId: string;
  gmVerdict: "confirmed" | "rejected";
  gmId: string;
  timestamp: string;
}
