{
  "events": [
    {"id": "0", "label": "0"},
    {"id": "1", "label": "1"},
    {"id": "b", "label": "b"}
  ],
  "configurations": [
    [],
    ["0"],
    ["1"],
    ["0", "1"],
    ["0", "b"],
    ["1", "b"]
  ]
}
