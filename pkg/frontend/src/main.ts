import { App } from './app';

/** Login screen: base URL, bearer token (memory only), user id, domain. */
function renderLogin(root: HTMLElement): void {
  const doc = root.ownerDocument;
  root.innerHTML = '';
  const form = doc.createElement('section');
  form.className = 'login';
  const heading = doc.createElement('h1');
  heading.textContent = 'casecoach';
  form.appendChild(heading);

  const fields: Record<string, HTMLInputElement> = {};
  for (const [name, placeholder, value] of [
    ['base', 'service URL', 'http://127.0.0.1:8042'],
    ['token', 'access token', ''],
    ['user', 'user id', ''],
    ['domain', 'domain id', 'respiratory'],
  ] as const) {
    const input = doc.createElement('input');
    input.placeholder = placeholder;
    input.value = value;
    input.setAttribute('data-role', `login-${name}`);
    if (name === 'token') input.type = 'password';
    fields[name] = input;
    form.appendChild(input);
  }

  const message = doc.createElement('p');
  message.className = 'form-message';
  form.appendChild(message);

  const go = doc.createElement('button');
  go.textContent = 'Open';
  go.setAttribute('data-role', 'login');
  go.addEventListener('click', () => {
    if (!fields.token.value || !fields.user.value) {
      message.textContent = 'Token and user id are required.';
      return;
    }
    const app = new App(root, {
      baseUrl: fields.base.value.replace(/\/$/, ''),
      token: fields.token.value,
      user: fields.user.value,
      domainId: fields.domain.value,
    });
    app.start().catch((err) => {
      renderLogin(root);
      root.querySelector('.form-message')!.textContent = String(err);
    });
  });
  form.appendChild(go);
  root.appendChild(form);
}

const mount = document.getElementById('app');
if (mount) renderLogin(mount);
