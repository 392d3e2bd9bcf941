using Inventory.Models;

namespace Inventory.Services;

public interface IItemStore
{
    IEnumerable<Item> Page(int page);
    Item? Find(int id);
    void Add(Item item);
}
