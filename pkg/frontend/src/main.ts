/** Browser entry point: mount the app on #app and bind hash routing. */

import { ApiClient } from './api.js';
import { SurveyApp } from './app.js';

function mount(): void {
  const root = document.getElementById('app');
  if (!root) {
    throw new Error('missing #app mount point');
  }
  const app = new SurveyApp({
    root,
    api: new ApiClient(''),
    storage: window.localStorage,
    onRoute: (route) => {
      if (window.location.hash !== route) {
        window.location.hash = route;
      }
    },
  });
  window.addEventListener('hashchange', () => {
    void app.routeTo(window.location.hash);
  });
  void app.init();
}

if (document.readyState === 'loading') {
  document.addEventListener('DOMContentLoaded', mount);
} else {
  mount();
}
