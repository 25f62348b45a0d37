// Pure-view rendering: a score cell shows exactly the number the service
// sent, stringified without rounding, so every displayed digit is
// auditable against the response body.

export function renderScore(value: number): string {
  return String(value);
}

export const KIND_LABELS: Record<string, string> = {
  user: "Users",
  concept: "Concepts",
  course: "Courses",
  source: "Sources",
  post: "Posts",
};

export const KIND_SEQUENCE = ["user", "concept", "course", "source", "post"];
