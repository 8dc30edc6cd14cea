import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

const here = dirname(fileURLToPath(import.meta.url));

/** Raw bytes of a captured service response (they stay byte-exact). */
export function fixtureText(name: string): string {
  return readFileSync(join(here, 'fixtures', name), 'utf-8');
}

export function fixture<T>(name: string): T {
  return JSON.parse(fixtureText(name)) as T;
}
