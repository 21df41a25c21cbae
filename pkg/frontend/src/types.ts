/** Wire types for the survey service HTTP API. */

export interface SessionConfigBody {
  pool_size?: number;
  panel_size?: number;
  iterations?: number;
  rng_seed?: number;
  exposure_balanced?: boolean;
}

export interface CreateSessionResponse {
  session_id: string;
  iteration: number;
  panel: number[];
  image_uris: string[];
}

export interface PanelResponse {
  session_id: string;
  iteration: number;
  iterations_total: number;
  panel: number[];
  image_uris: string[];
}

export interface SelectionResponse {
  next: number | 'questionnaire';
}

export interface QuestionnaireBody {
  criteria_text: string;
  age?: number | null;
  occupation?: string | null;
}

export interface QuestionnaireResponse {
  status: 'completed';
}

export type ServerPhase = 'in_progress' | 'awaiting_questionnaire' | 'completed';

export interface ReviewIteration {
  iteration: number;
  shown: number[];
  selected: number[];
  image_uris: string[];
  recorded_at: string;
}

export interface ReviewResponse {
  session_id: string;
  phase: ServerPhase;
  iterations_total: number;
  iterations: ReviewIteration[];
  questionnaire: {
    criteria_text: string;
    age: number | null;
    occupation: string | null;
  } | null;
}

export interface CatalogItem {
  id: number;
  image_uri: string;
  tags: string[];
}

export interface CatalogResponse {
  version: string;
  items: CatalogItem[];
}

export interface ErrorEnvelope {
  error: string;
  detail: unknown;
}
