package net.example.warehouse;

import java.util.HashMap;
import java.util.LinkedList;
import java.util.Map;
import java.util.Objects;
import java.util.Optional;

/** Tracks stock levels and movement history per item code. */
public class InventoryLedger {

    public enum MovementKind { RECEIPT, SHIPMENT, ADJUSTMENT, STOCKTAKE }

    public record Movement(String itemCode, MovementKind kind, int quantity, String reference) {
        public Movement {
            Objects.requireNonNull(itemCode, "itemCode");
            Objects.requireNonNull(kind, "kind");
            Objects.requireNonNull(reference, "reference");
        }
    }

    private final Map<String, Integer> stockLevels = new HashMap<>();
    private final Map<String, LinkedList<Movement>> history = new HashMap<>();
    private final int lowWaterMark;

    public InventoryLedger(int lowWaterMark) {
        this.lowWaterMark = lowWaterMark;
    }

    public int currentLevel(String itemCode) {
        return stockLevels.getOrDefault(itemCode, 0);
    }

    public boolean isRunningLow(String itemCode) {
        return currentLevel(itemCode) <= lowWaterMark;
    }

    public void receive(String itemCode, int quantity, String reference) {
        requirePositive(quantity);
        record(new Movement(itemCode, MovementKind.RECEIPT, quantity, reference));
        stockLevels.merge(itemCode, quantity, Integer::sum);
    }

    public void ship(String itemCode, int quantity, String reference) {
        requirePositive(quantity);
        int available = currentLevel(itemCode);
        if (available < quantity) {
            throw new IllegalStateException(
                "cannot ship " + quantity + " of " + itemCode + "; only " + available + " on hand");
        }
        record(new Movement(itemCode, MovementKind.SHIPMENT, -quantity, reference));
        stockLevels.merge(itemCode, -quantity, Integer::sum);
    }

    public void adjust(String itemCode, int signedQuantity, String reference) {
        if (signedQuantity == 0) {
            return;
        }
        record(new Movement(itemCode, MovementKind.ADJUSTMENT, signedQuantity, reference));
        stockLevels.merge(itemCode, signedQuantity, Integer::sum);
        if (currentLevel(itemCode) < 0) {
            stockLevels.put(itemCode, 0);
        }
    }

    public void stocktake(String itemCode, int countedQuantity, String reference) {
        int delta = countedQuantity - currentLevel(itemCode);
        record(new Movement(itemCode, MovementKind.STOCKTAKE, delta, reference));
        stockLevels.put(itemCode, countedQuantity);
    }

    public Optional<Movement> lastMovement(String itemCode) {
        LinkedList<Movement> movements = history.get(itemCode);
        if (movements == null || movements.isEmpty()) {
            return Optional.empty();
        }
        return Optional.of(movements.getLast());
    }

    public int movementCount(String itemCode) {
        LinkedList<Movement> movements = history.get(itemCode);
        return movements == null ? 0 : movements.size();
    }

    private void record(Movement movement) {
        history.computeIfAbsent(movement.itemCode(), unused -> new LinkedList<>()).add(movement);
    }

    private static void requirePositive(int quantity) {
        if (quantity <= 0) {
            throw new IllegalArgumentException("quantity must be positive, got " + quantity);
        }
    }
}
