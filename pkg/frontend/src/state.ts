/** Client-side session state machine.
 *
 * The server is the single source of truth; this state is a faithful local
 * mirror plus the one thing only the client knows — the staged (not yet
 * submitted) selection. Invariants enforced here:
 *
 *   - staged selection is always a subset of the current panel's ids
 *   - phase moves task → questionnaire → done, with review reachable only
 *     once the iterations are finished
 *   - a submission in flight blocks further submissions (double-submit guard)
 */

import type { PanelResponse, ReviewResponse, SelectionResponse } from './types.js';

export type Phase = 'task' | 'questionnaire' | 'review' | 'done';

export interface PanelTile {
  id: number;
  imageUri: string;
}

export interface ClientSessionState {
  sessionId: string;
  iteration: number;
  iterationsTotal: number;
  panel: PanelTile[];
  staged: Set<number>;
  phase: Phase;
  submitting: boolean;
  /** set when the last request failed with a transport error */
  retryMessage: string | null;
}

export function makeTiles(ids: number[], imageUris: string[]): PanelTile[] {
  return ids.map((id, index) => ({ id, imageUri: imageUris[index] ?? '' }));
}

export function newTaskState(
  sessionId: string,
  iteration: number,
  iterationsTotal: number,
  panel: PanelTile[],
): ClientSessionState {
  return {
    sessionId,
    iteration,
    iterationsTotal,
    panel,
    staged: new Set(),
    phase: 'task',
    submitting: false,
    retryMessage: null,
  };
}

export function fromPanelResponse(response: PanelResponse): ClientSessionState {
  return newTaskState(
    response.session_id,
    response.iteration,
    response.iterations_total,
    makeTiles(response.panel, response.image_uris),
  );
}

function panelIds(state: ClientSessionState): Set<number> {
  return new Set(state.panel.map((tile) => tile.id));
}

/** Move an id into the staged group. Ids outside the panel are ignored, so
 * the client can never send an id absent from the current panel. */
export function stageIn(state: ClientSessionState, id: number): void {
  if (panelIds(state).has(id)) {
    state.staged.add(id);
  }
}

export function stageOut(state: ClientSessionState, id: number): void {
  state.staged.delete(id);
}

export function toggleStaged(state: ClientSessionState, id: number): void {
  if (state.staged.has(id)) {
    stageOut(state, id);
  } else {
    stageIn(state, id);
  }
}

export function stagedIds(state: ClientSessionState): number[] {
  return [...state.staged].sort((a, b) => a - b);
}

/** Apply the server's answer to a selection POST. A numeric `next` needs the
 * next panel (fetched by the caller); "questionnaire" ends the task phase. */
export function applySelectionResponse(
  state: ClientSessionState,
  response: SelectionResponse,
  nextPanel?: PanelResponse,
): void {
  if (response.next === 'questionnaire') {
    state.phase = 'questionnaire';
    state.panel = [];
    state.staged = new Set();
    return;
  }
  if (!nextPanel) {
    throw new Error('next panel required to advance the task');
  }
  state.iteration = response.next;
  state.panel = makeTiles(nextPanel.panel, nextPanel.image_uris);
  state.staged = new Set();
}

export function applyQuestionnaireDone(state: ClientSessionState): void {
  state.phase = 'done';
}

/** Rebuild local state from the authoritative review record (refresh,
 * resume, or post-409 reload). */
export function fromReview(review: ReviewResponse, panel?: PanelResponse): ClientSessionState {
  if (review.phase === 'in_progress') {
    if (!panel) {
      throw new Error('in-progress sessions need the current panel to resume');
    }
    return fromPanelResponse(panel);
  }
  const state = newTaskState(review.session_id, review.iterations_total, review.iterations_total, []);
  state.phase = review.phase === 'awaiting_questionnaire' ? 'questionnaire' : 'done';
  return state;
}

// -- routing ----------------------------------------------------------------

export const ROUTES: Record<Phase, string> = {
  task: '#/task',
  questionnaire: '#/questionnaire',
  review: '#/review',
  done: '#/done',
};

function phaseForRoute(route: string): Phase | null {
  const found = (Object.entries(ROUTES) as [Phase, string][]).find(([, r]) => r === route);
  return found ? found[0] : null;
}

/** Which screen a requested route actually yields, given the session phase.
 * Jumping ahead (review/questionnaire/done before the iterations are over)
 * falls back to the task; the review stays reachable after completion. */
export function resolveRoute(state: ClientSessionState, requestedRoute: string): Phase {
  const requested = phaseForRoute(requestedRoute);
  switch (state.phase) {
    case 'task':
      return 'task';
    case 'questionnaire':
      return requested === 'review' ? 'review' : 'questionnaire';
    case 'done':
      return requested === 'review' ? 'review' : 'done';
    case 'review':
      return requested ?? 'review';
  }
}
