import { defineConfig } from "vitest/config";

// The API origin is baked in at build time; empty string means same-origin.
export default defineConfig({
  define: {
    __API_BASE__: JSON.stringify(process.env.QCADVISER_API_BASE ?? ""),
  },
  build: {
    outDir: "dist",
  },
  test: {
    environment: "happy-dom",
    testTimeout: 30000,
    hookTimeout: 30000,
  },
});
