/** Controller: owns the state, talks to the API, renders views into a root
 * element, and keeps the route in sync with the session phase.
 *
 * Recovery rules:
 *   - transport failure → retry banner; staged work is kept locally
 *   - 409 from the server → local state is stale; reload the authoritative
 *     record and re-render
 *   - refresh/new tab → only the session id persists (in storage); all state
 *     is restored from the server
 */

import { ApiClient, ApiError } from './api.js';
import type { ClientSessionState, Phase } from './state.js';
import {
  applyQuestionnaireDone,
  applySelectionResponse,
  fromPanelResponse,
  fromReview,
  resolveRoute,
  ROUTES,
  stagedIds,
  stageIn,
  stageOut,
  toggleStaged,
} from './state.js';
import type { ReviewResponse, SessionConfigBody } from './types.js';
import { renderDone, renderQuestionnaire, renderReview, renderTask } from './views.js';

export interface KeyValueStorage {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

export interface AppOptions {
  root: HTMLElement;
  api: ApiClient;
  /** persists only the session id, so a refresh can resume via the server */
  storage?: KeyValueStorage;
  /** config for freshly created sessions */
  config?: SessionConfigBody;
  /** reflect the active route outward (e.g. into location.hash) */
  onRoute?: (route: string) => void;
}

export const SESSION_STORAGE_KEY = 'similnet.session_id';

const RETRY_MESSAGE = 'Connection problem — nothing was lost.';

export class SurveyApp {
  state: ClientSessionState | null = null;
  view: Phase = 'task';

  private readonly root: HTMLElement;
  private readonly api: ApiClient;
  private readonly storage: KeyValueStorage | null;
  private readonly config: SessionConfigBody | undefined;
  private readonly onRoute: ((route: string) => void) | null;
  private lastReview: ReviewResponse | null = null;
  private pending: Promise<void> = Promise.resolve();

  constructor(options: AppOptions) {
    this.root = options.root;
    this.api = options.api;
    this.storage = options.storage ?? null;
    this.config = options.config;
    this.onRoute = options.onRoute ?? null;
  }

  /** Resolves when every handler started so far has finished. */
  settle(): Promise<void> {
    return this.pending;
  }

  private track(work: () => Promise<void>): Promise<void> {
    const next = this.pending.then(work);
    // Keep the chain alive after a failure; the failure itself is surfaced
    // by the work's own error handling (banner / reload).
    this.pending = next.catch(() => undefined);
    return next;
  }

  // -- lifecycle -----------------------------------------------------------

  init(): Promise<void> {
    return this.track(async () => {
      const storedId = this.storage?.getItem(SESSION_STORAGE_KEY) ?? null;
      if (storedId !== null) {
        try {
          await this.restore(storedId);
          return;
        } catch (error) {
          if (!(error instanceof ApiError) || error.status !== 404) {
            throw error;
          }
          this.storage?.removeItem(SESSION_STORAGE_KEY);
        }
      }
      await this.createFresh();
    });
  }

  private async createFresh(): Promise<void> {
    const created = await this.api.createSession(this.config);
    this.storage?.setItem(SESSION_STORAGE_KEY, created.session_id);
    // The panel read supplies iterations_total, which creation does not.
    const panel = await this.api.panel(created.session_id);
    this.state = fromPanelResponse(panel);
    this.view = 'task';
    this.render();
  }

  private async restore(sessionId: string): Promise<void> {
    const review = await this.api.review(sessionId);
    const panel =
      review.phase === 'in_progress' ? await this.api.panel(sessionId) : undefined;
    this.state = fromReview(review, panel);
    this.lastReview = review;
    this.view = this.state.phase;
    this.render();
  }

  private async reloadFromServer(): Promise<void> {
    if (this.state) {
      await this.restore(this.state.sessionId);
    }
  }

  // -- task interactions -----------------------------------------------------

  toggleTile(id: number): void {
    if (this.state && !this.state.submitting) {
      toggleStaged(this.state, id);
      this.render();
    }
  }

  dropIn(id: number): void {
    if (this.state && !this.state.submitting) {
      stageIn(this.state, id);
      this.render();
    }
  }

  dragOut(id: number): void {
    if (this.state && !this.state.submitting) {
      stageOut(this.state, id);
      this.render();
    }
  }

  submitSelection(): Promise<void> {
    const state = this.state;
    if (!state || state.phase !== 'task' || state.submitting) {
      return Promise.resolve();
    }
    // Claim the submission synchronously so a second click in the same tick
    // (double-click) cannot queue a duplicate behind the in-flight one.
    state.submitting = true;
    state.retryMessage = null;
    this.render();
    return this.track(() => this.doSubmitSelection(state));
  }

  private async doSubmitSelection(state: ClientSessionState): Promise<void> {
    try {
      const response = await this.api.submitSelection(
        state.sessionId,
        state.iteration,
        stagedIds(state),
      );
      if (response.next === 'questionnaire') {
        applySelectionResponse(state, response);
      } else {
        const nextPanel = await this.api.panel(state.sessionId);
        applySelectionResponse(state, response, nextPanel);
      }
      this.view = state.phase;
    } catch (error) {
      if (error instanceof ApiError && error.isNetwork) {
        state.retryMessage = RETRY_MESSAGE;
      } else if (error instanceof ApiError && error.isConflict) {
        state.submitting = false;
        await this.reloadFromServer();
        return;
      } else {
        throw error;
      }
    } finally {
      state.submitting = false;
    }
    this.render();
  }

  // -- questionnaire ---------------------------------------------------------

  submitQuestionnaire(
    criteriaText: string,
    age: number | null,
    occupation: string | null,
  ): Promise<void> {
    const state = this.state;
    if (!state || state.phase !== 'questionnaire' || state.submitting) {
      return Promise.resolve();
    }
    state.submitting = true;
    state.retryMessage = null;
    this.render();
    return this.track(() =>
      this.doSubmitQuestionnaire(state, criteriaText, age, occupation),
    );
  }

  private async doSubmitQuestionnaire(
    state: ClientSessionState,
    criteriaText: string,
    age: number | null,
    occupation: string | null,
  ): Promise<void> {
    try {
      await this.api.submitQuestionnaire(state.sessionId, {
        criteria_text: criteriaText,
        age,
        occupation,
      });
      applyQuestionnaireDone(state);
      this.view = 'done';
    } catch (error) {
      if (error instanceof ApiError && error.isNetwork) {
        state.retryMessage = RETRY_MESSAGE;
      } else if (error instanceof ApiError && error.isConflict) {
        state.submitting = false;
        await this.reloadFromServer();
        return;
      } else {
        throw error;
      }
    } finally {
      state.submitting = false;
    }
    this.render();
  }

  // -- routing ---------------------------------------------------------------

  /** Handle a requested route (hash change, link click, direct URL). Early
   * jumps to the review fall back to the task screen. */
  routeTo(route: string): Promise<void> {
    return this.track(async () => {
      if (!this.state) {
        return;
      }
      const resolved = resolveRoute(this.state, route);
      if (resolved === 'review') {
        this.lastReview = await this.api.review(this.state.sessionId);
      }
      this.view = resolved;
      this.render();
    });
  }

  // -- rendering -------------------------------------------------------------

  render(): void {
    const state = this.state;
    if (!state) {
      return;
    }
    const doc = this.root.ownerDocument;
    this.root.replaceChildren();
    switch (this.view) {
      case 'task':
        this.root.appendChild(
          renderTask(doc, state, {
            onToggle: (id) => this.toggleTile(id),
            onDropIn: (id) => this.dropIn(id),
            onDragOut: (id) => this.dragOut(id),
            onSubmit: () => void this.submitSelection(),
            onRetry: () => void this.submitSelection(),
          }),
        );
        break;
      case 'questionnaire':
        this.root.appendChild(
          renderQuestionnaire(doc, state, {
            onSubmit: (criteria, age, occupation) =>
              void this.submitQuestionnaire(criteria, age, occupation),
            reviewRoute: ROUTES.review,
          }),
        );
        break;
      case 'review': {
        const back = state.phase === 'done' ? ROUTES.done : ROUTES.questionnaire;
        if (this.lastReview) {
          this.root.appendChild(renderReview(doc, this.lastReview, back));
        }
        break;
      }
      case 'done':
        this.root.appendChild(renderDone(doc, ROUTES.review));
        break;
    }
    this.onRoute?.(ROUTES[this.view]);
  }
}
