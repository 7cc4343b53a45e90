def adjust_learning_rate(init_learning_rate, step_num,
    return init_learning_rate  # unbalanced signature: never parses
