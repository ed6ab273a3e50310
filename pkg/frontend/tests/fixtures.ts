import type { MatrixPayload } from "../src/types.js";

/** Severity matrix payload as the backend serves it (subset used by tests). */
export const MATRIX_PAYLOAD: MatrixPayload = {
  issue_types: [
    { name: "Addition", aspect: "Accuracy" },
    { name: "Omission", aspect: "Accuracy" },
    { name: "InaccuracyIntrinsic", aspect: "Accuracy" },
    { name: "InaccuracyExtrinsic", aspect: "Accuracy" },
    { name: "PositiveNegativeAspect", aspect: "Accuracy" },
    { name: "Duplication", aspect: "Fluency" },
    { name: "WordForm", aspect: "Fluency" },
    { name: "WordOrder", aspect: "Fluency" },
  ],
  syntactic_labels: [
    "Subject",
    "Predicate",
    "Object",
    "NumberTime",
    "PlaceName",
    "Attribute",
    "FunctionWord",
    "WholeSentence",
  ],
  severity_weights: { Minor: 1, Major: 5, Critical: 10 },
  cells: {
    Addition: {
      Subject: "Critical", Predicate: "Critical", Object: "Critical",
      NumberTime: "Major", PlaceName: "Major", Attribute: "Major",
      FunctionWord: "Minor", WholeSentence: "Major",
    },
    Omission: {
      Subject: "Critical", Predicate: "Critical", Object: "Critical",
      NumberTime: "Critical", PlaceName: "Major", Attribute: "Major",
      FunctionWord: "Minor", WholeSentence: "Critical",
    },
    InaccuracyIntrinsic: {
      Subject: "Critical", Predicate: "Critical", Object: "Critical",
      NumberTime: "Critical", PlaceName: "Critical", Attribute: "Major",
      FunctionWord: "Minor", WholeSentence: null,
    },
    InaccuracyExtrinsic: {
      Subject: "Critical", Predicate: "Critical", Object: "Critical",
      NumberTime: "Critical", PlaceName: "Critical", Attribute: "Critical",
      FunctionWord: "Minor", WholeSentence: null,
    },
    PositiveNegativeAspect: {
      Subject: null, Predicate: "Critical", Object: null,
      NumberTime: null, PlaceName: null, Attribute: "Critical",
      FunctionWord: null, WholeSentence: null,
    },
    Duplication: {
      Subject: "Major", Predicate: "Major", Object: "Major",
      NumberTime: "Major", PlaceName: "Major", Attribute: "Major",
      FunctionWord: "Minor", WholeSentence: "Major",
    },
    WordForm: {
      Subject: "Minor", Predicate: "Minor", Object: "Minor",
      NumberTime: "Minor", PlaceName: "Minor", Attribute: "Minor",
      FunctionWord: "Minor", WholeSentence: null,
    },
    WordOrder: {
      Subject: null, Predicate: "Major", Object: null,
      NumberTime: null, PlaceName: null, Attribute: "Major",
      FunctionWord: "Minor", WholeSentence: null,
    },
  },
  valid_labels: {
    Addition: ["Subject", "Predicate", "Object", "NumberTime", "PlaceName", "Attribute", "FunctionWord", "WholeSentence"],
    Omission: ["Subject", "Predicate", "Object", "NumberTime", "PlaceName", "Attribute", "FunctionWord", "WholeSentence"],
    InaccuracyIntrinsic: ["Subject", "Predicate", "Object", "NumberTime", "PlaceName", "Attribute", "FunctionWord"],
    InaccuracyExtrinsic: ["Subject", "Predicate", "Object", "NumberTime", "PlaceName", "Attribute", "FunctionWord"],
    PositiveNegativeAspect: ["Predicate", "Attribute"],
    Duplication: ["Subject", "Predicate", "Object", "NumberTime", "PlaceName", "Attribute", "FunctionWord", "WholeSentence"],
    WordForm: ["Subject", "Predicate", "Object", "NumberTime", "PlaceName", "Attribute", "FunctionWord"],
    WordOrder: ["Predicate", "Attribute", "FunctionWord"],
  },
};
