// Minimal element tree. Views are pure functions returning VNodes, so
// they can be rendered to an SVG/HTML string for the browser and walked
// directly in tests without a DOM implementation.

export type EventHandler = (detail?: unknown) => void;

export interface VNode {
  tag: string;
  attrs: Record<string, string | number>;
  children: (VNode | string)[];
  on: Record<string, EventHandler>;
}

export function h(
  tag: string,
  attrs: Record<string, string | number> = {},
  children: (VNode | string)[] = [],
  on: Record<string, EventHandler> = {},
): VNode {
  return { tag, attrs, children, on };
}

const ESCAPES: Record<string, string> = {
  "&": "&amp;",
  "<": "&lt;",
  ">": "&gt;",
  '"': "&quot;",
};

function escape(value: string): string {
  return value.replace(/[&<>"]/g, (c) => ESCAPES[c]);
}

export function renderToString(node: VNode | string): string {
  if (typeof node === "string") {
    return escape(node);
  }
  const attrs = Object.entries(node.attrs)
    .map(([k, v]) => ` ${k}="${escape(String(v))}"`)
    .join("");
  if (node.children.length === 0) {
    return `<${node.tag}${attrs}/>`;
  }
  const inner = node.children.map(renderToString).join("");
  return `<${node.tag}${attrs}>${inner}</${node.tag}>`;
}

export function findAll(node: VNode, pred: (n: VNode) => boolean): VNode[] {
  const out: VNode[] = [];
  const walk = (n: VNode | string) => {
    if (typeof n === "string") return;
    if (pred(n)) out.push(n);
    n.children.forEach(walk);
  };
  walk(node);
  return out;
}

export function byClass(node: VNode, cls: string): VNode[] {
  return findAll(node, (n) => String(n.attrs.class ?? "").split(" ").includes(cls));
}

export function textContent(node: VNode | string): string {
  if (typeof node === "string") return node;
  return node.children.map(textContent).join("");
}

/** Invoke a handler attached to a node, as the browser shell would. */
export function fire(node: VNode, event: string, detail?: unknown): void {
  const handler = node.on[event];
  if (!handler) {
    throw new Error(`no ${event} handler on <${node.tag}>`);
  }
  handler(detail);
}
