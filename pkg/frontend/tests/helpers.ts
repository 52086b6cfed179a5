import { readFileSync } from "node:fs";
import { join } from "node:path";

// vitest runs with the package root as cwd.
const FIXTURES = join(process.cwd(), "tests", "fixtures");

export function fixtureText(name: string): string {
  return readFileSync(join(FIXTURES, name), "utf-8");
}

export function fixtureJson<T = unknown>(name: string): T {
  return JSON.parse(fixtureText(name)) as T;
}
