/**
 * Wire-format fixtures captured from a live `sol2eb serve` session on the
 * bundled Gift project (abstract machine) and its refinement.
 */

export const OPEN_SESSION = {
  "session_id": "fixture-session",
  "project": "Gift_1_ETH",
  "machine": "Gift_1_ETH_m1",
  "state": {
    "event": null,
    "params": {},
    "variables": {
      "address_tem": [
        "this"
      ],
      "balanceof": [
        [
          "this",
          1
        ]
      ],
      "hashPass": 0,
      "passHasBeenSet": false
    },
    "previous": null,
    "invariants": [
      {
        "label": "inv1",
        "holds": true
      },
      {
        "label": "inv2",
        "holds": true
      },
      {
        "label": "inv3",
        "holds": true
      },
      {
        "label": "inv4",
        "holds": true
      },
      {
        "label": "inv5",
        "holds": true
      }
    ],
    "step": 0
  }
};

export const EVENTS_INITIAL = [
  {
    "event": "NewAccount",
    "params": [
      {
        "a": "ADDRESS1",
        "b": 0
      },
      {
        "a": "ADDRESS1",
        "b": 1
      },
      {
        "a": "ADDRESS1",
        "b": 2
      },
      {
        "a": "ADDRESS1",
        "b": 3
      },
      {
        "a": "ADDRESS1",
        "b": 4
      },
      {
        "a": "ADDRESS2",
        "b": 0
      },
      {
        "a": "ADDRESS2",
        "b": 1
      },
      {
        "a": "ADDRESS2",
        "b": 2
      },
      {
        "a": "ADDRESS2",
        "b": 3
      },
      {
        "a": "ADDRESS2",
        "b": 4
      }
    ],
    "overflow": false
  },
  {
    "event": "PassHasBeenSet",
    "params": [
      {
        "hash": 0
      },
      {
        "hash": 1
      },
      {
        "hash": 2
      },
      {
        "hash": 3
      },
      {
        "hash": 4
      }
    ],
    "overflow": false
  }
];

export const FIRE_NEW_ACCOUNT = {
  "event": "NewAccount",
  "params": {
    "a": "ADDRESS1",
    "b": 3
  },
  "variables": {
    "address_tem": [
      "this",
      "ADDRESS1"
    ],
    "balanceof": [
      [
        "this",
        1
      ],
      [
        "ADDRESS1",
        3
      ]
    ],
    "hashPass": 0,
    "passHasBeenSet": false
  },
  "previous": {
    "address_tem": [
      "this"
    ],
    "balanceof": [
      [
        "this",
        1
      ]
    ],
    "hashPass": 0,
    "passHasBeenSet": false
  },
  "invariants": [
    {
      "label": "inv1",
      "holds": true
    },
    {
      "label": "inv2",
      "holds": true
    },
    {
      "label": "inv3",
      "holds": true
    },
    {
      "label": "inv4",
      "holds": true
    },
    {
      "label": "inv5",
      "holds": true
    }
  ],
  "step": 1
};

export const EVENTS_AFTER_NEW_ACCOUNT = [
  {
    "event": "NewAccount",
    "params": [
      {
        "a": "ADDRESS2",
        "b": 0
      },
      {
        "a": "ADDRESS2",
        "b": 1
      },
      {
        "a": "ADDRESS2",
        "b": 2
      },
      {
        "a": "ADDRESS2",
        "b": 3
      },
      {
        "a": "ADDRESS2",
        "b": 4
      }
    ],
    "overflow": false
  },
  {
    "event": "SetPass",
    "params": [
      {
        "hash": 0,
        "msg_sender": "ADDRESS1",
        "msg_value": 1
      },
      {
        "hash": 0,
        "msg_sender": "ADDRESS1",
        "msg_value": 2
      },
      {
        "hash": 0,
        "msg_sender": "ADDRESS1",
        "msg_value": 3
      },
      {
        "hash": 1,
        "msg_sender": "ADDRESS1",
        "msg_value": 1
      },
      {
        "hash": 1,
        "msg_sender": "ADDRESS1",
        "msg_value": 2
      },
      {
        "hash": 1,
        "msg_sender": "ADDRESS1",
        "msg_value": 3
      },
      {
        "hash": 2,
        "msg_sender": "ADDRESS1",
        "msg_value": 1
      },
      {
        "hash": 2,
        "msg_sender": "ADDRESS1",
        "msg_value": 2
      },
      {
        "hash": 2,
        "msg_sender": "ADDRESS1",
        "msg_value": 3
      },
      {
        "hash": 3,
        "msg_sender": "ADDRESS1",
        "msg_value": 1
      },
      {
        "hash": 3,
        "msg_sender": "ADDRESS1",
        "msg_value": 2
      },
      {
        "hash": 3,
        "msg_sender": "ADDRESS1",
        "msg_value": 3
      },
      {
        "hash": 4,
        "msg_sender": "ADDRESS1",
        "msg_value": 1
      },
      {
        "hash": 4,
        "msg_sender": "ADDRESS1",
        "msg_value": 2
      },
      {
        "hash": 4,
        "msg_sender": "ADDRESS1",
        "msg_value": 3
      }
    ],
    "overflow": false
  },
  {
    "event": "GetGift",
    "params": [
      {
        "pass": 0,
        "msg_sender": "ADDRESS1"
      },
      {
        "pass": 1,
        "msg_sender": "ADDRESS1"
      },
      {
        "pass": 2,
        "msg_sender": "ADDRESS1"
      },
      {
        "pass": 3,
        "msg_sender": "ADDRESS1"
      },
      {
        "pass": 4,
        "msg_sender": "ADDRESS1"
      }
    ],
    "overflow": false
  },
  {
    "event": "PassHasBeenSet",
    "params": [
      {
        "hash": 0
      },
      {
        "hash": 1
      },
      {
        "hash": 2
      },
      {
        "hash": 3
      },
      {
        "hash": 4
      }
    ],
    "overflow": false
  }
];

export const FIRE_SETPASS = {
  "event": "SetPass",
  "params": {
    "hash": 2,
    "msg_sender": "ADDRESS1",
    "msg_value": 1
  },
  "variables": {
    "address_tem": [
      "this",
      "ADDRESS1"
    ],
    "balanceof": [
      [
        "this",
        2
      ],
      [
        "ADDRESS1",
        2
      ]
    ],
    "hashPass": 2,
    "passHasBeenSet": false
  },
  "previous": {
    "address_tem": [
      "this",
      "ADDRESS1"
    ],
    "balanceof": [
      [
        "this",
        1
      ],
      [
        "ADDRESS1",
        3
      ]
    ],
    "hashPass": 0,
    "passHasBeenSet": false
  },
  "invariants": [
    {
      "label": "inv1",
      "holds": true
    },
    {
      "label": "inv2",
      "holds": true
    },
    {
      "label": "inv3",
      "holds": true
    },
    {
      "label": "inv4",
      "holds": true
    },
    {
      "label": "inv5",
      "holds": true
    }
  ],
  "step": 2
};

export const GUARD_FAILED = {
  "status": 409,
  "body": {
    "failed_guard": "grd4"
  }
};

export const TRACE_AFTER_TWO_STEPS = {
  "machine": "Gift_1_ETH_m1",
  "bounds": {
    "addr": 3,
    "int_lo": 0,
    "int_hi": 4
  },
  "constants": {
    "TRANSFER_VALUE": 1,
    "initial_balance": 1,
    "password": 0,
    "this": "this"
  },
  "steps": [
    {
      "event": "NewAccount",
      "params": {
        "a": "ADDRESS1",
        "b": 3
      },
      "state": {
        "address_tem": [
          "this",
          "ADDRESS1"
        ],
        "balanceof": [
          [
            "this",
            1
          ],
          [
            "ADDRESS1",
            3
          ]
        ],
        "hashPass": 0,
        "passHasBeenSet": false
      }
    },
    {
      "event": "SetPass",
      "params": {
        "hash": 2,
        "msg_sender": "ADDRESS1",
        "msg_value": 1
      },
      "state": {
        "address_tem": [
          "this",
          "ADDRESS1"
        ],
        "balanceof": [
          [
            "this",
            2
          ],
          [
            "ADDRESS1",
            2
          ]
        ],
        "hashPass": 2,
        "passHasBeenSet": false
      }
    }
  ]
};

export const PROJECTS = [
  {
    "name": "Gift_1_ETH",
    "machines": [
      "Gift_1_ETH_m1"
    ]
  },
  {
    "name": "Gift_refined",
    "machines": [
      "Gift_1_ETH_m1",
      "Gift_1_ETH_m2"
    ]
  }
];

export const POS_REFINED = {
  "project": "Gift_1_ETH",
  "bounds": {
    "addr": 2,
    "int_lo": 0,
    "int_hi": 3
  },
  "pos": [
    {
      "name": "INITIALISATION/inv4/INV",
      "machine": "Gift_1_ETH_m1",
      "kind": "INV",
      "status": "discharged",
      "cases": 6,
      "counterexample": null,
      "source_span": null
    },
    {
      "name": "INITIALISATION/inv5/INV",
      "machine": "Gift_1_ETH_m1",
      "kind": "INV",
      "status": "discharged",
      "cases": 2,
      "counterexample": null,
      "source_span": null
    },
    {
      "name": "NewAccount/inv4/INV",
      "machine": "Gift_1_ETH_m1",
      "kind": "INV",
      "status": "discharged",
      "cases": 32,
      "counterexample": null,
      "source_span": null
    },
    {
      "name": "NewAccount/inv5/INV",
      "machine": "Gift_1_ETH_m1",
      "kind": "INV",
      "status": "discharged",
      "cases": 8,
      "counterexample": null,
      "source_span": null
    },
    {
      "name": "SetPass/grd4/WD",
      "machine": "Gift_1_ETH_m1",
      "kind": "WD",
      "status": "discharged",
      "cases": 32,
      "counterexample": null,
      "source_span": null
    },
    {
      "name": "SetPass/inv4/INV",
      "machine": "Gift_1_ETH_m1",
      "kind": "INV",
      "status": "discharged",
      "cases": 80,
      "counterexample": null,
      "source_span": null
    },
    {
      "name": "SetPass/act1/WD",
      "machine": "Gift_1_ETH_m1",
      "kind": "WD",
      "status": "discharged",
      "cases": 160,
      "counterexample": null,
      "source_span": null
    },
    {
      "name": "SetPass/act2/WD",
      "machine": "Gift_1_ETH_m1",
      "kind": "WD",
      "status": "discharged",
      "cases": 80,
      "counterexample": null,
      "source_span": null
    },
    {
      "name": "GetGift/inv4/INV",
      "machine": "Gift_1_ETH_m1",
      "kind": "INV",
      "status": "discharged",
      "cases": 512,
      "counterexample": null,
      "source_span": null
    },
    {
      "name": "GetGift/act1/WD",
      "machine": "Gift_1_ETH_m1",
      "kind": "WD",
      "status": "discharged",
      "cases": 512,
      "counterexample": null,
      "source_span": null
    },
    {
      "name": "PassHasBeenSet/act1/WD",
      "machine": "Gift_1_ETH_m1",
      "kind": "WD",
      "status": "discharged",
      "cases": 16,
      "counterexample": null,
      "source_span": null
    },
    {
      "name": "SetPass/grd4/WD",
      "machine": "Gift_1_ETH_m2",
      "kind": "WD",
      "status": "discharged",
      "cases": 32,
      "counterexample": null,
      "source_span": null
    },
    {
      "name": "SetPass/act1/SIM",
      "machine": "Gift_1_ETH_m2",
      "kind": "SIM",
      "status": "discharged",
      "cases": 1280,
      "counterexample": null,
      "source_span": null
    },
    {
      "name": "SetPass/act2/SIM",
      "machine": "Gift_1_ETH_m2",
      "kind": "SIM",
      "status": "violated",
      "cases": 1,
      "counterexample": {
        "this": "this",
        "password": 0,
        "initial_balance": 1,
        "TRANSFER_VALUE": 1,
        "passHasBeenSet": true,
        "hashPass": 0,
        "address_tem": [
          "this",
          "ADDRESS1"
        ],
        "balanceof": [
          [
            "this",
            0
          ],
          [
            "ADDRESS1",
            1
          ]
        ],
        "hash": 0,
        "msg_sender": "ADDRESS1",
        "msg_value": 1
      },
      "source_span": null
    }
  ]
};
