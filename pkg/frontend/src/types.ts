/** Payload shapes of the annotation service API. */

export interface MatrixPayload {
  issue_types: { name: string; aspect: string }[];
  syntactic_labels: string[];
  severity_weights: Record<string, number>;
  cells: Record<string, Record<string, string | null>>;
  valid_labels: Record<string, string[]>;
}

export interface TaskDescriptor {
  sample_id: string;
  target: string;
}

export interface TasksPayload {
  annotator: string;
  blind: boolean;
  tasks: TaskDescriptor[];
}

export interface ScorePayload {
  sample_id: string;
  word_count: number;
  counts: Record<string, number>;
  weighted_deduction: number;
  score: number;
}

export interface AnnotationPayload {
  id: string;
  sample_id: string;
  target: string;
  span: [number, number];
  issue_type: string;
  syntactic_label: string;
  severity: string;
  annotator: string;
  created_at: string;
}

export interface SamplePayload {
  sample_id: string;
  target: string;
  source: string;
  text: string;
  annotations: AnnotationPayload[];
  score: ScorePayload | null;
}

export interface PostErrorRequest {
  sample_id: string;
  target: string;
  span: [number, number];
  issue_type: string;
  syntactic_label: string;
}

export interface PostErrorResponse {
  annotation: AnnotationPayload;
  score: ScorePayload | null;
}

export interface DeleteErrorResponse {
  deleted: string;
  score: ScorePayload | null;
}

export interface ApiErrorBody {
  error: {
    code: string;
    message: string;
    details: Record<string, unknown>;
  };
}
